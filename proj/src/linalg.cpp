#include "slicekit/linalg.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace slicekit {

namespace {

double truncation_threshold(const Eigen::JacobiSVD<Mat>& svd, Eigen::Index rows,
                            Eigen::Index cols, double rank_tol) {
    if (rank_tol > 0.0) return rank_tol;
    const double smax = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
    return static_cast<double>(std::max(rows, cols)) *
           std::numeric_limits<double>::epsilon() * smax;
}

}  // namespace

Mat pinv(const Mat& m, double rank_tol) {
    if (m.size() == 0) return Mat(m.cols(), m.rows());
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success)
        throw std::runtime_error("SVD failed to converge in pinv");
    const double thresh = truncation_threshold(svd, m.rows(), m.cols(), rank_tol);
    const auto& sv = svd.singularValues();
    Vec inv = Vec::Zero(sv.size());
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv[i] > thresh) inv[i] = 1.0 / sv[i];
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

double MpReport::max() const { return std::max(std::max(mpm, pmp), std::max(mp_sym, pm_sym)); }

MpReport verify_mp_conditions(const Mat& m, const Mat& p) {
    if (p.rows() != m.cols() || p.cols() != m.rows())
        throw std::invalid_argument("pseudoinverse candidate has wrong shape");
    auto rel = [](double num, double den) { return num / (den > 0.0 ? den : 1.0); };
    const Mat mp = m * p;
    const Mat pm = p * m;
    MpReport r{};
    r.mpm = rel((mp * m - m).norm(), m.norm());
    r.pmp = rel((pm * p - p).norm(), p.norm());
    r.mp_sym = (mp.transpose() - mp).norm() / std::max(1.0, mp.norm());
    r.pm_sym = (pm.transpose() - pm).norm() / std::max(1.0, pm.norm());
    return r;
}

Mat null_space_basis(const Mat& m, double rank_tol) {
    if (m.cols() == 0) return Mat(0, 0);
    if (m.rows() == 0) return Mat::Identity(m.cols(), m.cols());
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
    if (svd.info() != Eigen::Success)
        throw std::runtime_error("SVD failed to converge in null_space_basis");
    const double thresh = truncation_threshold(svd, m.rows(), m.cols(), rank_tol);
    const auto& sv = svd.singularValues();
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv[i] > thresh) ++rank;
    return svd.matrixV().rightCols(m.cols() - rank);
}

Mat kernel_intersection(const std::vector<Mat>& ms, double rank_tol) {
    if (ms.empty()) throw std::invalid_argument("kernel_intersection needs at least one matrix");
    const Eigen::Index cols = ms.front().cols();
    Eigen::Index rows = 0;
    for (const auto& m : ms) {
        if (m.cols() != cols)
            throw std::invalid_argument("kernel_intersection: column counts differ");
        rows += m.rows();
    }
    Mat stacked(rows, cols);
    Eigen::Index at = 0;
    for (const auto& m : ms) {
        stacked.middleRows(at, m.rows()) = m;
        at += m.rows();
    }
    return null_space_basis(stacked, rank_tol);
}

bool is_complex_structure(const Mat& m, double tol) {
    if (m.rows() != m.cols() || m.rows() % 2 != 0 || m.rows() == 0) return false;
    const Mat res = m * m + Mat::Identity(m.rows(), m.cols());
    return res.lpNorm<Eigen::Infinity>() <= tol;
}

Mat standard_structure(Eigen::Index n) {
    Mat j = Mat::Zero(2 * n, 2 * n);
    j.topRightCorner(n, n) = -Mat::Identity(n, n);
    j.bottomLeftCorner(n, n) = Mat::Identity(n, n);
    return j;
}

IBasis i_basis(const Mat& structure, BasisOrder order) {
    const Eigen::Index dim = structure.rows();
    if (dim != structure.cols() || dim % 2 != 0 || dim == 0)
        throw std::invalid_argument("i_basis needs a square even-dimensional matrix");
    const Eigen::Index n = dim / 2;

    // Greedy scan: accept a standard basis vector when it is numerically
    // independent (residual above 1e-8) of everything collected so far, then
    // also collect its image. Orthonormal frame q tracks the running span.
    Mat theta(dim, n);
    Mat q(dim, 2 * n);
    Eigen::Index accepted = 0;
    Eigen::Index qcols = 0;
    auto residual_against_span = [&](const Vec& v) {
        Vec r = v;
        for (Eigen::Index c = 0; c < qcols; ++c) r -= q.col(c).dot(v) * q.col(c);
        return r;
    };
    auto push_span = [&](const Vec& v) {
        Vec r = residual_against_span(v);
        // reorthogonalize once; classical Gram-Schmidt alone drifts
        r = residual_against_span(r);
        const double nrm = r.norm();
        if (nrm > 0.0) q.col(qcols++) = r / nrm;
    };

    for (Eigen::Index step = 0; step < dim && accepted < n; ++step) {
        const Eigen::Index k = (order == BasisOrder::Forward) ? step : dim - 1 - step;
        Vec cand = Vec::Zero(dim);
        cand[k] = 1.0;
        const Vec img = structure.col(k);  // structure * e_k
        if (residual_against_span(cand).norm() <= 1e-8) continue;
        // The candidate must stay independent after its image joins too.
        const Eigen::Index save = qcols;
        push_span(cand);
        if (residual_against_span(img).norm() <= 1e-8) {
            qcols = save;
            continue;
        }
        push_span(img);
        theta.col(accepted++) = cand;
    }
    if (accepted < n)
        throw std::invalid_argument(
            "i_basis: greedy scan stalled; the input is not a complex structure");

    IBasis basis;
    basis.n = n;
    basis.d.resize(dim, dim);
    basis.d.leftCols(n) = theta;
    basis.d.rightCols(n) = structure * theta;
    Eigen::JacobiSVD<Mat> svd(basis.d);
    const auto& sv = svd.singularValues();
    basis.condition = sv[sv.size() - 1] > 0.0 ? sv[0] / sv[sv.size() - 1]
                                              : std::numeric_limits<double>::infinity();
    return basis;
}

Mat conjugated_structure(const Mat& structure, const IBasis& basis) {
    return basis.d.partialPivLu().solve(structure * basis.d);
}

}  // namespace slicekit
