#include "slicekit/repform.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>
#include <iostream>
#include <stdexcept>

namespace slicekit {

namespace {

std::invalid_argument bad(const std::string& msg) { return std::invalid_argument(msg); }

Mat one_l_block(const Mat& lmat) {
    const Eigen::Index dim = lmat.rows();
    Mat b(dim, 2 * dim);
    b.leftCols(dim) = Mat::Identity(dim, dim);
    b.rightCols(dim) = lmat;
    return b;
}

Vec stack_values(const std::vector<Vec>& values, Eigen::Index dim, std::size_t k) {
    if (values.size() != k) throw bad("expected one sample per tuple entry");
    Vec v(static_cast<Eigen::Index>(k) * dim);
    for (std::size_t l = 0; l < k; ++l) {
        if (values[l].size() != dim) throw bad("slice sample has wrong dimension");
        v.segment(static_cast<Eigen::Index>(l) * dim, dim) = values[l];
    }
    return v;
}

}  // namespace

UnitTuple make_unit_tuple(std::vector<Element> units) {
    if (units.empty()) throw bad("unit tuple must be nonempty");
    UnitTuple t;
    t.algebra = units.front().algebra();
    for (const auto& u : units) {
        if (u.algebra().get() != t.algebra.get())
            throw bad("unit tuple mixes algebra instances");
        if (!is_slice_unit(u, 1e-10))
            throw bad("tuple entry is not a slice unit at tolerance 1e-10");
        t.lmats.push_back(left_mul_matrix(u));
    }
    t.units = std::move(units);
    return t;
}

Mat tuple_diag(const UnitTuple& tuple) {
    const Eigen::Index dim = tuple.twon();
    const auto k = static_cast<Eigen::Index>(tuple.k());
    Mat d = Mat::Zero(k * dim, k * dim);
    for (Eigen::Index l = 0; l < k; ++l)
        d.block(l * dim, l * dim, dim, dim) = tuple.lmats[static_cast<std::size_t>(l)];
    return d;
}

ZetaSystem build_zeta(const UnitTuple& tuple, BasisOrder order) {
    const Eigen::Index dim = tuple.twon();
    const auto k = static_cast<Eigen::Index>(tuple.k());

    ZetaSystem sys;
    sys.tuple = tuple;
    sys.z.resize(k * dim, 2 * dim);
    sys.dj = Mat::Zero(k * dim, k * dim);
    Mat dj_inv = Mat::Zero(k * dim, k * dim);

    std::vector<Mat> blocks;
    for (Eigen::Index l = 0; l < k; ++l) {
        const Mat& lmat = tuple.lmats[static_cast<std::size_t>(l)];
        sys.z.middleRows(l * dim, dim) = one_l_block(lmat);
        const IBasis basis = i_basis(lmat, order);
        sys.dj.block(l * dim, l * dim, dim, dim) = basis.d;
        dj_inv.block(l * dim, l * dim, dim, dim) = basis.d.partialPivLu().inverse();
        blocks.push_back(one_l_block(lmat));
    }

    sys.zplus = pinv(dj_inv * sys.z) * dj_inv;
    sys.kerbasis = kernel_intersection(blocks);
    return sys;
}

bool kernel_membership(const Element& unit, const ZetaSystem& sys, double tol) {
    if (sys.kernel_dim() == 0) return true;
    const Mat block = one_l_block(left_mul_matrix(unit));
    return (block * sys.kerbasis).lpNorm<Eigen::Infinity>() <= tol;
}

SliceSolution slice_solution(const std::vector<Element>& candidates) {
    if (candidates.empty()) throw bad("slice_solution needs at least one candidate");
    // Validates every candidate as a slice unit up front.
    const UnitTuple all = make_unit_tuple(candidates);
    const Eigen::Index dim = all.twon();

    Mat kerbasis = Mat::Identity(2 * dim, 2 * dim);
    std::vector<std::size_t> chosen;
    bool progress = true;
    while (progress && kerbasis.cols() > 0) {
        progress = false;
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            const Mat restricted = one_l_block(all.lmats[c]) * kerbasis;
            const Mat reduced = null_space_basis(restricted);
            if (reduced.cols() < kerbasis.cols()) {
                kerbasis = kerbasis * reduced;  // stays orthonormal
                chosen.push_back(c);
                progress = true;
                break;
            }
        }
    }

    std::vector<Element> picked;
    for (std::size_t c : chosen) picked.push_back(candidates[c]);
    return SliceSolution{make_unit_tuple(std::move(picked)), std::move(chosen), kerbasis.cols()};
}

Mat two_point_inverse(const Element& j1, const Element& j2) {
    if (j1.algebra().get() != j2.algebra().get())
        throw bad("two_point_inverse mixes algebra instances");
    const Mat l1 = left_mul_matrix(j1);
    const Mat l2 = left_mul_matrix(j2);
    const Mat diff = l1 - l2;
    Eigen::JacobiSVD<Mat> svd(diff);
    const auto& sv = svd.singularValues();
    const double smax = sv[0];
    const double smin = sv[sv.size() - 1];
    if (smax == 0.0 || smin / smax <= 1e-8)
        throw SingularDifferenceError(
            "difference of left multiplications is numerically singular (smin/smax = " +
            std::to_string(smax == 0.0 ? 0.0 : smin / smax) + ")");

    const Eigen::Index dim = l1.rows();
    const Eigen::PartialPivLU<Mat> lu(diff);
    const Mat a = lu.inverse();
    Mat m(2 * dim, 2 * dim);
    m.topLeftCorner(dim, dim) = a * l1;
    m.topRightCorner(dim, dim) = -a * l2;
    m.bottomLeftCorner(dim, dim) = a;
    m.bottomRightCorner(dim, dim) = -a;
    return m;
}

Vec StemValue::stacked() const {
    Vec v(a.size() + b.size());
    v << a, b;
    return v;
}

StemResult stem_solve(const std::vector<Vec>& values, const ZetaSystem& sys) {
    const Eigen::Index dim = sys.tuple.twon();
    const Vec stack = stack_values(values, dim, sys.tuple.k());
    const Vec f = sys.zplus * stack;
    const double data_norm = stack.norm();
    const double res = (sys.z * f - stack).norm();
    StemResult out;
    out.f = StemValue{f.head(dim), f.tail(dim)};
    out.residual = data_norm > 0.0 ? res / data_norm : res;
    return out;
}

namespace {

Vec apply_one_l(const Mat& lmat, const Vec& f) {
    const Eigen::Index dim = lmat.rows();
    return f.head(dim) + lmat * f.tail(dim);
}

void warn_outside_cone(const Element& unit, const ZetaSystem& sys) {
    if (!kernel_membership(unit, sys)) {
        std::cerr << "slicekit: note: target unit is outside the kernel cone of the tuple; "
                     "reconstruction is not guaranteed\n";
    }
}

}  // namespace

Vec reconstruct(const std::vector<Vec>& values, const ZetaSystem& sys, const Element& unit) {
    warn_outside_cone(unit, sys);
    const Eigen::Index dim = sys.tuple.twon();
    const Vec stack = stack_values(values, dim, sys.tuple.k());
    return apply_one_l(left_mul_matrix(unit), sys.zplus * stack);
}

std::vector<Vec> reconstruct_path(const std::vector<std::vector<Vec>>& values,
                                  const ZetaSystem& sys, const Element& unit) {
    warn_outside_cone(unit, sys);
    const Eigen::Index dim = sys.tuple.twon();
    const Mat lmat = left_mul_matrix(unit);
    std::vector<Vec> out;
    out.reserve(values.size());
    for (const auto& sample : values) {
        const Vec stack = stack_values(sample, dim, sys.tuple.k());
        out.push_back(apply_one_l(lmat, sys.zplus * stack));
    }
    return out;
}

Vec reconstruct_two_point(const std::array<Vec, 2>& values, const Element& j1,
                          const Element& j2, const Element& unit) {
    const Mat m = two_point_inverse(j1, j2);
    const Eigen::Index dim = m.rows() / 2;
    Vec stack(2 * dim);
    stack << values[0], values[1];
    return apply_one_l(left_mul_matrix(unit), m * stack);
}

Vec reconstruct_classical(const std::array<Vec, 2>& values, const Element& j1,
                          const Element& j2, const Element& unit) {
    const Mat l1 = left_mul_matrix(j1);
    const Mat l2 = left_mul_matrix(j2);
    const Mat li = left_mul_matrix(unit);
    const Mat diff = l1 - l2;
    Eigen::JacobiSVD<Mat> svd(diff);
    const auto& sv = svd.singularValues();
    if (sv[0] == 0.0 || sv[sv.size() - 1] / sv[0] <= 1e-8)
        throw SingularDifferenceError("difference of left multiplications is numerically singular");
    const Eigen::PartialPivLU<Mat> lu(diff);
    const Vec w1 = lu.solve(values[0]);
    const Vec w2 = lu.solve(values[1]);
    return (li - l2) * w1 - (li - l1) * w2;
}

StructureReport verify_structure_identities(const Element& unit, const ZetaSystem& sys) {
    const Eigen::Index dim = sys.tuple.twon();
    const Mat li = left_mul_matrix(unit);
    const Mat one_i = one_l_block(li);
    const Mat sigma = standard_structure(dim);  // [[0,-Id],[Id,0]] on R^{2 dim}
    const Mat diag = tuple_diag(sys.tuple);

    StructureReport rep{};
    const Mat lhs_slice = li * one_i;
    const Mat rhs_slice = one_i * sigma;
    rep.slice_plus = (lhs_slice - rhs_slice).lpNorm<Eigen::Infinity>();
    rep.slice_minus = (lhs_slice + rhs_slice).lpNorm<Eigen::Infinity>();

    const Mat lhs_tuple = diag * sys.z;
    const Mat rhs_tuple = sys.z * sigma;
    rep.tuple_plus = (lhs_tuple - rhs_tuple).lpNorm<Eigen::Infinity>();
    rep.tuple_minus = (lhs_tuple + rhs_tuple).lpNorm<Eigen::Infinity>();

    const Mat q = sys.dj.partialPivLu().solve(diag * sys.dj);
    rep.orthogonality =
        (q.transpose() * q - Mat::Identity(q.rows(), q.cols())).lpNorm<Eigen::Infinity>();

    const Mat m = one_i * sys.zplus;
    rep.intertwine = (li * m - m * diag).lpNorm<Eigen::Infinity>();

    const double plus = std::max(rep.slice_plus, rep.tuple_plus);
    const double minus = std::max(rep.slice_minus, rep.tuple_minus);
    rep.resolved_sign = plus <= minus ? 1 : -1;
    return rep;
}

}  // namespace slicekit
