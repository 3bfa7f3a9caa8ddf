#pragma once

#include <Eigen/Dense>
#include <vector>

namespace slicekit {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Moore-Penrose pseudoinverse via SVD. Singular values at or below the
// truncation threshold are dropped; rank_tol = 0 selects the standard
// max(rows, cols) * eps * sigma_max rule.
Mat pinv(const Mat& m, double rank_tol = 0.0);

struct MpReport {
    double mpm;   // |M P M - M|_F / |M|_F
    double pmp;   // |P M P - P|_F / |P|_F
    double mp_sym;  // |(M P)^T - M P|_F / max(1, |M P|_F)
    double pm_sym;  // |(P M)^T - P M|_F / max(1, |P M|_F)
    double max() const;
};

// Relative Frobenius residuals of the four Moore-Penrose conditions for a
// candidate pseudoinverse P of M.
MpReport verify_mp_conditions(const Mat& m, const Mat& p);

// Orthonormal basis of the null space as columns; zero-column matrix when the
// kernel is trivial. Same truncation rule as pinv.
Mat null_space_basis(const Mat& m, double rank_tol = 0.0);

// Orthonormal basis of the intersection of the kernels, computed as the null
// space of the vertically stacked matrix. The list must be nonempty and the
// column counts must agree.
Mat kernel_intersection(const std::vector<Mat>& ms, double rank_tol = 0.0);

// m is square, even-dimensional, and m^2 = -Id within tol (max-norm).
bool is_complex_structure(const Mat& m, double tol = 1e-12);

// Standard complex structure J_2n = [[0, -I_n], [I_n, 0]].
Mat standard_structure(Eigen::Index n);

enum class BasisOrder {
    Forward,   // scan standard basis vectors e_0, e_1, ...
    Reversed,  // scan e_{2n-1}, e_{2n-2}, ...
};

// Adapted basis for a complex structure I on R^{2n}: columns are
// (theta_1..theta_n, I theta_1..I theta_n), built by a deterministic greedy
// scan over standard basis vectors. A candidate is accepted when its residual
// against the span of the vectors collected so far exceeds 1e-8.
struct IBasis {
    Mat d;             // 2n x 2n, invertible
    Eigen::Index n;    // number of theta columns
    double condition;  // 2-norm condition estimate of d
};

// Fails only if the scan cannot reach n accepted vectors, which happens
// exactly when `structure` is not a complex structure.
IBasis i_basis(const Mat& structure, BasisOrder order = BasisOrder::Forward);

// D^-1 * I * D for the adapted basis; equals J_2n when D was built for I.
Mat conjugated_structure(const Mat& structure, const IBasis& basis);

}  // namespace slicekit
