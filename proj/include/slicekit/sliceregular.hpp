#pragma once

#include <complex>
#include <functional>
#include <map>
#include <vector>

#include "slicekit/repform.hpp"
#include "slicekit/slicecone.hpp"

namespace slicekit {

// Polynomial with right-side coefficients over d slice variables:
//   P(z) = sum_alpha z^alpha * a_alpha
// evaluated at x + yI by applying the commuting operators (x_l + y_l L_I)
// with multiplicity alpha_l to the coefficient, variable d first, variable 1
// last. The operators are polynomials in L_I, so the order is immaterial
// mathematically; it is fixed for determinism.
class SlicePolynomial {
public:
    using MultiIndex = std::vector<int>;

    SlicePolynomial(Eigen::Index d, AlgebraPtr algebra);

    Eigen::Index d() const { return d_; }
    const AlgebraPtr& algebra() const { return algebra_; }
    const std::map<MultiIndex, Element>& terms() const { return terms_; }

    // Adds into the coefficient of alpha; alpha must have length d and
    // nonnegative entries.
    void add_term(MultiIndex alpha, const Element& coeff);

    // Copy with exactly-zero coefficient vectors removed.
    SlicePolynomial normalized() const;

    int degree() const;

private:
    Eigen::Index d_;
    AlgebraPtr algebra_;
    std::map<MultiIndex, Element> terms_;
};

Element eval(const SlicePolynomial& p, const SlicePoint& z);

// Values of x + yI on a fixed slice.
using SliceEvaluator = std::function<Vec(const Vec& x, const Vec& y)>;

// Evaluator of a polynomial restricted to the slice of `unit`.
SliceEvaluator slice_evaluator(const SlicePolynomial& p, const Element& unit);

// Grid of (x, y) points for finite-difference checks. Seeded jittered
// lattice, points_per_axis values per coordinate, with every y component at
// least y_min away from the real axis.
std::vector<std::pair<Vec, Vec>> make_grid(Eigen::Index d, int points_per_axis,
                                           std::uint64_t seed, double y_min);

struct CrReport {
    std::vector<double> per_variable;  // max residual over the grid, per slice variable
    double max_residual = 0.0;
    double scale = 1.0;  // 1 + max |f| over the grid
    double h = 0.0;
    double tol = 0.0;
    bool pass = false;  // max_residual <= tol * scale
};

// Max-over-grid residual of the slicewise Cauchy-Riemann operator
// 0.5 (d/dx_l + L d/dy_l) f per variable, by central differences with step h.
// `structure` is the complex structure acting on the codomain (the left
// multiplication matrix of the slice unit, or [[0,-1],[1,0]] for C-valued
// components).
CrReport cr_residual(const SliceEvaluator& f, const Mat& structure,
                     const std::vector<std::pair<Vec, Vec>>& grid, double h, double tol);

CrReport cr_residual(const SliceEvaluator& f, const Element& unit,
                     const std::vector<std::pair<Vec, Vec>>& grid, double h, double tol);

// Splitting of a slice-valued map into n complex components along an adapted
// basis: f(z) = sum_l D_I c, F_l = c_l + i c_{n+l}. Components are sampled on
// the grid; the recomposition residual is the max over the grid of
// |D_I c - f(z)|.
struct SplitDecomposition {
    IBasis basis;
    std::vector<std::vector<std::complex<double>>> components;  // [grid point][l]
    double recomposition_residual = 0.0;
};

SplitDecomposition split(const SliceEvaluator& f, const Element& unit,
                         const std::vector<std::pair<Vec, Vec>>& grid);

// R^2-valued evaluator of one split component, suitable for cr_residual with
// the 2x2 structure [[0,-1],[1,0]].
SliceEvaluator split_component_evaluator(const SliceEvaluator& f, const IBasis& basis,
                                         Eigen::Index component);

struct IdentityProbeReport {
    double max_sample_diff = 0.0;
    bool samples_equal = false;  // max_sample_diff <= tol
    double coeff_max_diff = 0.0;
    bool coeffs_equal = false;  // normalized term maps identical (exact)
    bool agree = false;         // the two verdicts coincide
};

// Compares P and Q on sampled points and by exact comparison of normalized
// coefficient maps; sampling can pass while coefficients differ (tiny terms),
// and the report flags such disagreements.
IdentityProbeReport identity_probe(const SlicePolynomial& p, const SlicePolynomial& q,
                                   const std::vector<SlicePoint>& region, double tol);

}  // namespace slicekit
