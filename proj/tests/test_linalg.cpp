#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/QR>
#include <cmath>

#include "slicekit/algebra.hpp"
#include "slicekit/linalg.hpp"
#include "slicekit/rng.hpp"

using namespace slicekit;

namespace {

Mat random_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    Mat m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.normal();
    return m;
}

Mat random_orthogonal(Eigen::Index n, Rng& rng) {
    const Eigen::HouseholderQR<Mat> qr(random_matrix(n, n, rng));
    return qr.householderQ();
}

// Rank-deficient by construction: outer product of tall and wide factors.
Mat random_rank_deficient(Eigen::Index rows, Eigen::Index cols, Eigen::Index rank, Rng& rng) {
    return random_matrix(rows, rank, rng) * random_matrix(rank, cols, rng);
}

}  // namespace

TEST_CASE("pinv on easy closed forms") {
    CHECK((pinv(Mat::Identity(5, 5)) - Mat::Identity(5, 5)).norm() < 1e-14);

    Mat d = Mat::Zero(2, 2);
    d(0, 0) = 2.0;
    Mat expect = Mat::Zero(2, 2);
    expect(0, 0) = 0.5;
    CHECK((pinv(d) - expect).lpNorm<Eigen::Infinity>() < 1e-15);

    Rng rng(101);
    const Mat m = random_matrix(5, 5, rng) + 5.0 * Mat::Identity(5, 5);
    CHECK((pinv(m) - m.inverse()).norm() / m.inverse().norm() < 1e-12);
}

TEST_CASE("pseudoinverse conditions across shapes") {
    Rng rng(102);
    for (int t = 0; t < 8; ++t) {
        const Mat cases[] = {
            random_matrix(4, 4, rng),
            random_matrix(16, 8, rng),
            random_matrix(32, 64, rng),
            random_rank_deficient(20, 12, 5, rng),
        };
        for (const Mat& m : cases) {
            const MpReport rep = verify_mp_conditions(m, pinv(m));
            CHECK(rep.max() <= 1e-9);
        }
    }
    CHECK_THROWS_AS(verify_mp_conditions(Mat::Zero(2, 3), Mat::Zero(2, 3)),
                    std::invalid_argument);
}

TEST_CASE("transpose is not a pseudoinverse of a generic matrix") {
    Rng rng(103);
    const Mat m = random_matrix(6, 6, rng);
    const MpReport rep = verify_mp_conditions(m, m.transpose());
    CHECK(rep.max() > 0.1);
}

TEST_CASE("pseudoinverse commutes with orthogonal sandwiches") {
    Rng rng(104);
    for (int t = 0; t < 10; ++t) {
        const Mat m = t % 2 == 0 ? random_matrix(9, 6, rng) : random_rank_deficient(9, 6, 3, rng);
        const Mat u = random_orthogonal(9, rng);
        const Mat v = random_orthogonal(6, rng);
        const Mat lhs = pinv(u * m * v);
        const Mat rhs = v.transpose() * pinv(m) * u.transpose();
        CHECK((lhs - rhs).norm() / std::max(1.0, rhs.norm()) <= 1e-9);
    }
}

TEST_CASE("null space bases") {
    CHECK(null_space_basis(Mat::Identity(4, 4)).cols() == 0);

    Mat row(1, 2);
    row << 1.0, 1.0;
    const Mat basis = null_space_basis(row);
    REQUIRE(basis.cols() == 1);
    CHECK(std::abs(std::abs(basis.col(0).dot(Vec::Ones(2).normalized()))) < 1e-14);
    CHECK(std::abs(basis.col(0).norm() - 1.0) < 1e-14);

    Rng rng(105);
    const Mat m = random_rank_deficient(10, 8, 3, rng);
    const Mat nsb = null_space_basis(m);
    CHECK(nsb.cols() == 5);
    CHECK((m * nsb).norm() < 1e-10 * m.norm());
    CHECK((nsb.transpose() * nsb - Mat::Identity(5, 5)).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("the kernel of (Id | L_I) has half the stacked dimension") {
    Rng rng(106);
    for (const AlgebraPtr& alg : {quaternion(), octonion()}) {
        const auto dim = static_cast<Eigen::Index>(alg->dim());
        for (int t = 0; t < 5; ++t) {
            const Mat l = left_mul_matrix(random_slice_unit(alg, rng));
            Mat block(dim, 2 * dim);
            block.leftCols(dim) = Mat::Identity(dim, dim);
            block.rightCols(dim) = l;
            CHECK(null_space_basis(block).cols() == dim);
        }
    }
}

TEST_CASE("kernel intersections") {
    const AlgebraPtr h = quaternion();
    auto block = [&](const Element& u) {
        Mat b(4, 8);
        b.leftCols(4) = Mat::Identity(4, 4);
        b.rightCols(4) = left_mul_matrix(u);
        return b;
    };
    const Element i = Element::basis(h, 1);

    SUBCASE("a single matrix reduces to its null space") {
        const Mat a = block(i);
        const Mat lhs = kernel_intersection({a});
        const Mat rhs = null_space_basis(a);
        REQUIRE(lhs.cols() == rhs.cols());
        // Same subspace: the two orthonormal bases have equal projectors.
        CHECK((lhs * lhs.transpose() - rhs * rhs.transpose()).lpNorm<Eigen::Infinity>() < 1e-12);
    }
    SUBCASE("opposite units intersect trivially") {
        CHECK(kernel_intersection({block(i), block(-i)}).cols() == 0);
    }
    SUBCASE("duplicates do not shrink the kernel") {
        // (Id | L_i) has full row rank, so its kernel has dimension 4 and a
        // repeated block leaves it untouched.
        CHECK(kernel_intersection({block(i), block(i)}).cols() == 4);
    }
    SUBCASE("input validation") {
        CHECK_THROWS_AS(kernel_intersection({}), std::invalid_argument);
        CHECK_THROWS_AS(kernel_intersection({Mat::Zero(2, 3), Mat::Zero(2, 4)}),
                        std::invalid_argument);
    }
}

TEST_CASE("complex structure detection") {
    CHECK(is_complex_structure(standard_structure(3)));
    CHECK_FALSE(is_complex_structure(Mat::Identity(4, 4)));
    CHECK_FALSE(is_complex_structure(Mat::Zero(3, 3)));
    CHECK_FALSE(is_complex_structure(Mat::Zero(2, 3)));

    // A deliberately non-orthogonal structure: e1 -> (1,1), (1,1) -> -e1.
    Mat skewed(2, 2);
    skewed << 1, -2,
              1, -1;
    CHECK(is_complex_structure(skewed));

    const Mat j = standard_structure(2);
    CHECK(j.rows() == 4);
    CHECK((j * j + Mat::Identity(4, 4)).norm() == 0.0);
}

TEST_CASE("adapted bases") {
    SUBCASE("the standard structure yields the identity basis") {
        for (Eigen::Index n : {1, 2, 4}) {
            const IBasis b = i_basis(standard_structure(n));
            CHECK(b.n == n);
            CHECK((b.d - Mat::Identity(2 * n, 2 * n)).lpNorm<Eigen::Infinity>() < 1e-14);
        }
    }
    SUBCASE("a skewed structure still conjugates to the standard one") {
        Mat skewed(2, 2);
        skewed << 1, -2,
                  1, -1;
        const IBasis b = i_basis(skewed);
        CHECK((conjugated_structure(skewed, b) - standard_structure(1)).lpNorm<Eigen::Infinity>() <
              1e-12);
    }
    SUBCASE("quaternion left multiplication") {
        const IBasis b = i_basis(left_mul_matrix(Element::basis(quaternion(), 1)));
        CHECK(b.n == 2);
        CHECK(std::abs(b.d.determinant()) > 0.0);
        CHECK(b.condition >= 1.0);
    }
    SUBCASE("random slice units across the tower") {
        Rng rng(107);
        for (const AlgebraPtr& alg : {quaternion(), octonion(), sedenion()}) {
            const auto dim = static_cast<Eigen::Index>(alg->dim());
            for (int t = 0; t < 5; ++t) {
                const Mat l = left_mul_matrix(random_slice_unit(alg, rng));
                for (const BasisOrder order : {BasisOrder::Forward, BasisOrder::Reversed}) {
                    const IBasis b = i_basis(l, order);
                    CHECK((conjugated_structure(l, b) - standard_structure(dim / 2))
                              .lpNorm<Eigen::Infinity>() <= 1e-10);
                }
            }
        }
    }
    SUBCASE("the doubling unit e8 is already adapted") {
        const Mat l = left_mul_matrix(Element::basis(sedenion(), 8));
        const IBasis b = i_basis(l);
        CHECK((conjugated_structure(l, b) - standard_structure(8)).lpNorm<Eigen::Infinity>() <=
              1e-12);
    }
    SUBCASE("non-structures are rejected") {
        CHECK_THROWS_AS(i_basis(Mat::Identity(4, 4)), std::invalid_argument);
        CHECK_THROWS_AS(i_basis(Mat::Zero(3, 3)), std::invalid_argument);
    }
    SUBCASE("identity basis leaves the standard structure alone") {
        const Mat j = standard_structure(2);
        const IBasis b = i_basis(j);
        CHECK((conjugated_structure(j, b) - j).lpNorm<Eigen::Infinity>() < 1e-14);
    }
}
