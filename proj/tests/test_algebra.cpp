#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "slicekit/algebra.hpp"
#include "slicekit/io.hpp"

using namespace slicekit;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

VectorXd unit_coeff(std::size_t dim, std::size_t k, double v = 1.0) {
    VectorXd c = VectorXd::Zero(static_cast<Eigen::Index>(dim));
    c[static_cast<Eigen::Index>(k)] = v;
    return c;
}

// Independent blade arithmetic for the Clifford oracle. A blade is a strictly
// increasing list of generator indices. Multiplying two blades concatenates
// the lists, sorts them while counting transpositions (each one flips the
// sign), and cancels equal neighbours at a factor -1 apiece (e_l^2 = -1).
struct BladeProduct {
    std::vector<int> indices;
    int sign;
};

BladeProduct blade_multiply(std::vector<int> a, const std::vector<int>& b) {
    int sign = 1;
    a.insert(a.end(), b.begin(), b.end());
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
        for (std::size_t j = 0; j + 1 < a.size() - i; ++j) {
            if (a[j] > a[j + 1]) {
                std::swap(a[j], a[j + 1]);
                sign = -sign;
            }
        }
    }
    std::vector<int> reduced;
    for (std::size_t i = 0; i < a.size();) {
        if (i + 1 < a.size() && a[i] == a[i + 1]) {
            sign = -sign;
            i += 2;
        } else {
            reduced.push_back(a[i++]);
        }
    }
    return {std::move(reduced), sign};
}

std::vector<std::vector<int>> ordered_blades(int m) {
    std::vector<std::vector<int>> blades;
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        std::vector<int> idx;
        for (int b = 0; b < m; ++b)
            if (mask & (1u << b)) idx.push_back(b);
        blades.push_back(std::move(idx));
    }
    std::sort(blades.begin(), blades.end(), [](const auto& x, const auto& y) {
        if (x.size() != y.size()) return x.size() < y.size();
        return x < y;
    });
    return blades;
}

// Quaternions in the skewed basis f0 = 1, f1 = i+j, f2 = j+k, f3 = i+k. No
// basis element squares to -1 here, so a slice-unit search cannot succeed on
// the basis scan alone.
AlgebraPtr skewed_quaternions() {
    const AlgebraPtr h = quaternion();
    MatrixXd b(4, 4);
    b << 1, 0, 0, 0,
         0, 1, 0, 1,
         0, 1, 1, 0,
         0, 0, 1, 1;
    const Eigen::PartialPivLU<MatrixXd> lu(b);
    std::vector<double> table(64);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const Element fi(h, b.col(i));
            const Element fj(h, b.col(j));
            const VectorXd prod = lu.solve(multiply(fi, fj).coeffs());
            for (int k = 0; k < 4; ++k) table[(i * 4 + j) * 4 + static_cast<std::size_t>(k)] = prod[k];
        }
    }
    return AlgebraSpec::make("skewed-quaternion", 4, std::move(table));
}

AlgebraPtr split_complex() {
    // e1^2 = +1, so no element squares to -1 (x^2 + y^2 = -1 has no real
    // solution) and no left multiplication squares to -Id.
    return AlgebraSpec::make("split-complex", 2, {1, 0, 0, 1, 0, 1, 1, 0});
}

}  // namespace

TEST_CASE("structure table validation") {
    CHECK_THROWS_AS(AlgebraSpec::make("bad", 0, {}), std::invalid_argument);
    CHECK_THROWS_AS(AlgebraSpec::make("bad", 2, {1.0, 0.0}), std::invalid_argument);
    // e_0 e_1 = 0 breaks unitality.
    CHECK_THROWS_AS(AlgebraSpec::make("bad", 2, {1, 0, 0, 0, 0, 1, 1, 0}),
                    std::invalid_argument);
    const AlgebraPtr r = reals();
    CHECK(r->dim() == 1);
    CHECK(r->structure(0, 0, 0) == 1.0);
}

TEST_CASE("element arithmetic basics") {
    const AlgebraPtr h = quaternion();
    const Element one = Element::one(h);
    const Element e1 = Element::basis(h, 1);
    CHECK(Element::zero(h).norm() == 0.0);
    CHECK((one * e1 - e1).norm() == 0.0);
    CHECK((e1 * one - e1).norm() == 0.0);
    CHECK(((e1 + e1) - 2.0 * e1).norm() == 0.0);
    CHECK((-e1 + e1).norm() == 0.0);
    CHECK(e1.real_part() == 0.0);
    CHECK(conj(e1).coeffs()[1] == -1.0);
    CHECK(conj(one).coeffs()[0] == 1.0);

    // Elements of distinct AlgebraSpec instances must not mix, even when the
    // tables agree.
    const AlgebraPtr c2a = clifford_algebra(2);
    const AlgebraPtr c2b = clifford_algebra(2);
    CHECK_THROWS_AS(multiply(Element::basis(c2a, 1), Element::basis(c2b, 1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(Element(h, VectorXd::Zero(3)), std::invalid_argument);
}

TEST_CASE("quaternion table matches the hand-written one") {
    const AlgebraPtr h = quaternion();
    REQUIRE(h->dim() == 4);
    // (k, sign) of e_i e_j for i, j in 1..3, typed from i j = k, j k = i,
    // k i = j and the anticommutation rules.
    const int expect_k[3][3] = {{0, 3, 2}, {3, 0, 1}, {2, 1, 0}};
    const double expect_s[3][3] = {{-1, +1, -1}, {-1, -1, +1}, {+1, -1, -1}};
    for (std::size_t i = 1; i <= 3; ++i) {
        for (std::size_t j = 1; j <= 3; ++j) {
            const VectorXd got = h->basis_product(i, j);
            const std::size_t k = static_cast<std::size_t>(expect_k[i - 1][j - 1]);
            CHECK(got == unit_coeff(4, k, expect_s[i - 1][j - 1]));
        }
    }
}

TEST_CASE("octonions embed in the sedenions") {
    const AlgebraPtr o = octonion();
    const AlgebraPtr s = sedenion();
    REQUIRE(o->dim() == 8);
    REQUIRE(s->dim() == 16);
    for (std::size_t i = 0; i < 8; ++i) {
        for (std::size_t j = 0; j < 8; ++j) {
            for (std::size_t k = 0; k < 16; ++k) {
                const double want = k < 8 ? o->structure(i, j, k) : 0.0;
                CHECK(s->structure(i, j, k) == want);
            }
        }
    }
}

TEST_CASE("sedenion products match the shipped reference table") {
    const AlgebraPtr s = sedenion();
    const AlgebraPtr ref = load_algebra_json(fixture_path("sedenion_table.json"));
    REQUIRE(ref->dim() == 16);
    int mismatched_products = 0;
    for (std::size_t i = 0; i < 16; ++i)
        for (std::size_t j = 0; j < 16; ++j)
            if (s->basis_product(i, j) != ref->basis_product(i, j)) ++mismatched_products;
    CHECK(mismatched_products == 0);

    // A few entries typed straight from the reference table, guarding against
    // a systematically wrong fixture and a matching systematic bug at once.
    auto prod_is = [&](std::size_t i, std::size_t j, std::size_t k, double sign) {
        CHECK(s->basis_product(i, j) == unit_coeff(16, k, sign));
    };
    prod_is(1, 8, 9, +1.0);
    prod_is(8, 1, 9, -1.0);
    prod_is(8, 9, 1, +1.0);
    prod_is(9, 8, 1, -1.0);
    prod_is(4, 12, 8, -1.0);
    prod_is(12, 4, 8, +1.0);
    prod_is(1, 4, 5, +1.0);
    prod_is(1, 14, 15, +1.0);
    prod_is(10, 5, 15, -1.0);
}

TEST_CASE("clifford tables match independent blade arithmetic") {
    for (int m = 1; m <= 4; ++m) {
        CAPTURE(m);
        const AlgebraPtr alg = clifford_algebra(m);
        const auto blades = ordered_blades(m);
        REQUIRE(alg->dim() == blades.size());
        for (std::size_t i = 0; i < blades.size(); ++i) {
            for (std::size_t j = 0; j < blades.size(); ++j) {
                const BladeProduct p = blade_multiply(blades[i], blades[j]);
                const auto it = std::find(blades.begin(), blades.end(), p.indices);
                REQUIRE(it != blades.end());
                const auto k = static_cast<std::size_t>(it - blades.begin());
                CHECK(alg->basis_product(i, j) ==
                      unit_coeff(blades.size(), k, static_cast<double>(p.sign)));
            }
        }
    }

    // With two anticommuting generators the blade table is the quaternion
    // table: g1 -> i, g2 -> j, g1 g2 -> k.
    const AlgebraPtr c2 = clifford_algebra(2);
    const AlgebraPtr h = quaternion();
    CHECK(c2->table() == h->table());

    CHECK_THROWS_AS(clifford_algebra(0), std::invalid_argument);
    CHECK_THROWS_AS(clifford_algebra(9), std::invalid_argument);
}

TEST_CASE("zero divisors appear at the sedenion level") {
    const AlgebraPtr s = sedenion();
    const Element zd1 = Element::basis(s, 1) + Element::basis(s, 10);
    const Element zd2 = Element::basis(s, 5) + Element::basis(s, 14);
    CHECK((zd1 * zd2).norm() == 0.0);

    // Norm multiplicativity survives the doubling up to the octonions and
    // breaks exactly here.
    Rng rng(401);
    for (const AlgebraPtr& alg : {quaternion(), octonion()}) {
        for (int t = 0; t < 20; ++t) {
            const Element a(alg, rng.normal_vector(static_cast<Eigen::Index>(alg->dim())));
            const Element b(alg, rng.normal_vector(static_cast<Eigen::Index>(alg->dim())));
            CHECK((a * b).norm() == doctest::Approx(a.norm() * b.norm()).epsilon(1e-12));
        }
    }
    CHECK(zd1.norm() * zd2.norm() == doctest::Approx(2.0));
}

TEST_CASE("conjugation reverses products below the sedenions") {
    Rng rng(402);
    for (const AlgebraPtr& alg : {quaternion(), octonion()}) {
        for (int t = 0; t < 20; ++t) {
            const Element a(alg, rng.normal_vector(static_cast<Eigen::Index>(alg->dim())));
            const Element b(alg, rng.normal_vector(static_cast<Eigen::Index>(alg->dim())));
            const Element lhs = conj(a * b);
            const Element rhs = conj(b) * conj(a);
            CHECK((lhs - rhs).coeffs().lpNorm<Eigen::Infinity>() < 1e-12);
        }
    }
}

TEST_CASE("left alternativity verdicts") {
    CHECK(is_left_alternative(quaternion()).ok);
    CHECK(is_left_alternative(octonion()).ok);
    CHECK(is_left_alternative(clifford_algebra(3)).ok);

    const LeftAlternativeReport sed = is_left_alternative(sedenion());
    CHECK_FALSE(sed.ok);
    CHECK(sed.max_residual > 1e-2);
    REQUIRE(sed.witness.has_value());
    // The witness must actually exhibit the failure.
    const auto& [a, b] = *sed.witness;
    const Element lhs = a * (a * b);
    const Element rhs = (a * a) * b;
    CHECK((lhs - rhs).coeffs().lpNorm<Eigen::Infinity>() ==
          doctest::Approx(sed.max_residual));
}

TEST_CASE("imaginary units and slice units coincide below the sedenions") {
    Rng rng(403);
    for (const AlgebraPtr& alg : {quaternion(), octonion(), clifford_algebra(3)}) {
        CAPTURE(alg->name());
        for (int t = 0; t < 30; ++t) {
            const Element u = random_imaginary_unit(alg, rng);
            CHECK(is_imaginary_unit(u));
            CHECK(is_slice_unit(u));
        }
    }
}

TEST_CASE("sedenion imaginary units split into slice and non-slice kinds") {
    const AlgebraPtr s = sedenion();
    const AlgebraPtr o = octonion();

    // (e1 + e10)/sqrt(2) squares to -1 but its left multiplication is
    // singular (e1 + e10 annihilates e5 + e14), so it cannot be a slice unit.
    VectorXd c = VectorXd::Zero(16);
    c[1] = c[10] = 1.0 / std::sqrt(2.0);
    const Element mixed(s, c);
    CHECK(is_imaginary_unit(mixed));
    const MatrixXd l = left_mul_matrix(mixed);
    const double residual = (l * l + MatrixXd::Identity(16, 16)).lpNorm<Eigen::Infinity>();
    CHECK(residual > 0.01);
    CHECK_FALSE(is_slice_unit(mixed));

    // Across random imaginary units s = p + q e8, sliceness is equivalent to
    // pq = qp in the octonions; check the two verdicts never disagree.
    Rng rng(404);
    int mismatches = 0;
    int imaginary_only = 0;
    for (int t = 0; t < 200; ++t) {
        const Element u = random_imaginary_unit(s, rng);
        const Element p(o, u.coeffs().head(8));
        const Element q(o, u.coeffs().tail(8));
        const bool commute = (p * q - q * p).norm() <= 1e-9;
        const bool slice = is_slice_unit(u);
        if (slice != commute) ++mismatches;
        if (!slice) ++imaginary_only;
    }
    CHECK(mismatches == 0);
    CHECK(imaginary_only > 0);
}

TEST_CASE("slice unit existence search") {
    SUBCASE("found on the basis scan") {
        const LscsReport rep = is_lscs(quaternion());
        CHECK(rep.found);
        CHECK(rep.newton_hits == 0);
        REQUIRE(rep.witness.has_value());
        CHECK(is_slice_unit(*rep.witness, 1e-10));
    }
    SUBCASE("found only through refinement") {
        const LscsReport rep = is_lscs(skewed_quaternions());
        CHECK(rep.found);
        CHECK(rep.newton_hits == 1);
        REQUIRE(rep.witness.has_value());
        CHECK(rep.residual <= 1e-12);
        CHECK(is_slice_unit(*rep.witness, 1e-10));
        CHECK(is_imaginary_unit(*rep.witness, 1e-10));
    }
    SUBCASE("absent") {
        const LscsReport rep = is_lscs(split_complex());
        CHECK_FALSE(rep.found);
        CHECK_FALSE(rep.witness.has_value());
    }
    SUBCASE("present in every doubling and clifford level tested") {
        CHECK(is_lscs(octonion()).found);
        CHECK(is_lscs(sedenion()).found);
        CHECK(is_lscs(clifford_algebra(4)).found);
    }
}

TEST_CASE("builtin algebra parser") {
    CHECK(builtin_algebra("quaternion")->dim() == 4);
    CHECK(builtin_algebra("octonion")->dim() == 8);
    CHECK(builtin_algebra("sedenion")->dim() == 16);
    CHECK(builtin_algebra("clifford:3")->dim() == 8);
    CHECK(builtin_algebra("cd:0")->name() == "real");
    CHECK(builtin_algebra("cd:1")->name() == "complex");
    CHECK(builtin_algebra("cd:2")->table() == quaternion()->table());
    CHECK(builtin_algebra("cd:5")->dim() == 32);
    CHECK_THROWS_AS(builtin_algebra("cd:7"), std::invalid_argument);
    CHECK_THROWS_AS(builtin_algebra("cd:x"), std::invalid_argument);
    CHECK_THROWS_AS(builtin_algebra("clifford:"), std::invalid_argument);
    CHECK_THROWS_AS(builtin_algebra("nonsense"), std::invalid_argument);

    // The complex level already has the doubling structure: e1^2 = -1.
    const AlgebraPtr c = builtin_algebra("cd:1");
    CHECK(c->basis_product(1, 1) == unit_coeff(2, 0, -1.0));
}

TEST_CASE("random samplers are deterministic and valid") {
    const AlgebraPtr s = sedenion();
    const AlgebraPtr o = octonion();

    Rng a(7), b(7);
    const Element ua = random_imaginary_unit(s, a);
    const Element ub = random_imaginary_unit(s, b);
    CHECK(ua.coeffs() == ub.coeffs());

    Rng rng(405);
    for (int t = 0; t < 50; ++t) {
        const Element u = random_slice_unit(s, rng);
        CHECK(is_slice_unit(u, 1e-10));
        CHECK(is_imaginary_unit(u, 1e-10));
        const Element p(o, u.coeffs().head(8));
        const Element q(o, u.coeffs().tail(8));
        CHECK((p * q - q * p).norm() < 1e-12);
    }
    for (const AlgebraPtr& alg : {quaternion(), octonion(), clifford_algebra(3)}) {
        for (int t = 0; t < 10; ++t) CHECK(is_slice_unit(random_slice_unit(alg, rng), 1e-10));
    }
}

TEST_CASE("imaginary unit refinement") {
    const AlgebraPtr h = quaternion();
    VectorXd start = VectorXd::Zero(4);
    start << 0.02, 0.98, 0.1, -0.07;
    const auto refined = refine_imaginary_unit(Element(h, start));
    REQUIRE(refined.has_value());
    CHECK(is_imaginary_unit(*refined, 1e-12));

    CHECK_FALSE(refine_imaginary_unit(Element::zero(h)).has_value());
    CHECK_FALSE(refine_imaginary_unit(Element::one(split_complex())).has_value());
}
