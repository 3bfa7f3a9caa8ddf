#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "slicekit/rng.hpp"

namespace slicekit {

class AlgebraSpec;
using AlgebraPtr = std::shared_ptr<const AlgebraSpec>;

// A finite-dimensional real unital algebra given by its structure constants:
// e_i * e_j = sum_k table(i,j,k) e_k, with e_0 = 1. The table is immutable
// after construction.
class AlgebraSpec {
public:
    static AlgebraPtr make(std::string name, std::size_t dim, std::vector<double> table);

    const std::string& name() const { return name_; }
    std::size_t dim() const { return dim_; }

    double structure(std::size_t i, std::size_t j, std::size_t k) const {
        return table_[(i * dim_ + j) * dim_ + k];
    }
    const std::vector<double>& table() const { return table_; }

    // Coefficients of the basis product e_i * e_j.
    Eigen::VectorXd basis_product(std::size_t i, std::size_t j) const;

private:
    AlgebraSpec(std::string name, std::size_t dim, std::vector<double> table);

    std::string name_;
    std::size_t dim_;
    std::vector<double> table_;  // row-major, table[(i*dim + j)*dim + k]

    struct Entry {
        std::size_t k;
        double c;
    };
    // Nonzero structure per (i,j) pair; keeps products cheap for the sparse
    // sign tables produced by the doubling and Clifford constructions.
    std::vector<std::vector<Entry>> nonzeros_;

    friend Eigen::VectorXd multiply_coeffs(const AlgebraSpec&, const Eigen::VectorXd&,
                                           const Eigen::VectorXd&);
};

// Element of a specific algebra; carries a shared handle to its AlgebraSpec.
class Element {
public:
    Element(AlgebraPtr algebra, Eigen::VectorXd coeffs);

    static Element zero(AlgebraPtr algebra);
    static Element one(AlgebraPtr algebra);
    static Element basis(AlgebraPtr algebra, std::size_t k);

    const AlgebraPtr& algebra() const { return algebra_; }
    const Eigen::VectorXd& coeffs() const { return coeffs_; }
    double coeff(std::size_t k) const { return coeffs_[static_cast<Eigen::Index>(k)]; }
    std::size_t dim() const { return static_cast<std::size_t>(coeffs_.size()); }

    double norm() const { return coeffs_.norm(); }
    double real_part() const { return coeffs_[0]; }

    Element operator+(const Element& rhs) const;
    Element operator-(const Element& rhs) const;
    Element operator-() const;
    Element operator*(const Element& rhs) const;  // algebra product
    Element scaled(double s) const;

private:
    AlgebraPtr algebra_;
    Eigen::VectorXd coeffs_;
};

Element operator*(double s, const Element& a);

// Algebra product a*b; both factors must come from the same AlgebraSpec
// instance. Exact in floating point whenever the table entries and the
// coefficients are exactly representable.
Element multiply(const Element& a, const Element& b);

// Matrix of x -> a*x in the basis of the algebra.
Eigen::MatrixXd left_mul_matrix(const Element& a);

// Matrix of x -> x*a.
Eigen::MatrixXd right_mul_matrix(const Element& a);

// Standard conjugation conj(a) = 2*Re(a)*1 - a.
Element conj(const Element& a);

// a*a = -1 within tol (max-norm on the coefficient vector of a*a + 1).
bool is_imaginary_unit(const Element& a, double tol = 1e-10);

// Left multiplication by a is a complex structure: L_a^2 = -Id within tol
// (max-norm on L_a^2 + Id).
bool is_slice_unit(const Element& a, double tol = 1e-10);

struct LeftAlternativeReport {
    bool ok = false;
    double max_residual = 0.0;
    // Worst witness pair for a(ab) != (aa)b, kept even when the check passes.
    std::optional<std::pair<Element, Element>> witness;
};

// Checks a(ab) = (aa)b over all basis pairs and over 100 seeded random pairs.
// The identity is quadratic in a, so random pairs are needed on top of the
// basis scan to catch cross terms.
LeftAlternativeReport is_left_alternative(const AlgebraPtr& algebra, double tol = 1e-10);

struct LscsReport {
    bool found = false;
    std::optional<Element> witness;
    double residual = 0.0;  // max-norm of L_w^2 + Id for the witness
    int newton_hits = 0;    // random starts that converged
};

// Searches for a slice unit: scans basis elements first, then refines
// `trials` seeded random starts by Newton iteration on a -> L_a^2 + Id.
LscsReport is_lscs(const AlgebraPtr& algebra, int trials = 64, std::uint64_t seed = 0);

// Newton refinement of a single starting point toward a*a = -1. Returns the
// refined element if the residual dropped below tol within maxit steps.
std::optional<Element> refine_imaginary_unit(const Element& start, double tol = 1e-12,
                                             int maxit = 50);

// Builders ------------------------------------------------------------------

// The reals; dim 1, the seed of the doubling tower.
AlgebraPtr reals();

// Cayley-Dickson double of `base`:
//   (a,b)(c,d) = (ac - conj(d)b, da + b conj(c)),  conj(a,b) = (conj(a), -b).
// Basis pairs map to indices (i, dim+i).
AlgebraPtr cayley_dickson(const AlgebraPtr& base);

// Clifford algebra R_m with e_i^2 = -1, blades ordered by (grade, lex index
// set); dim 2^m. m = 0 is rejected.
AlgebraPtr clifford_algebra(int m);

AlgebraPtr quaternion();
AlgebraPtr octonion();
AlgebraPtr sedenion();

// Parses builtin identifiers: quaternion | octonion | sedenion | clifford:m
// | cd:k (k doublings from the reals).
AlgebraPtr builtin_algebra(std::string_view id);

// Random samplers ------------------------------------------------------------

// Imaginary unit by Newton projection of a random unit-sphere point onto
// a*a = -1; retries until a start converges.
Element random_imaginary_unit(const AlgebraPtr& algebra, Rng& rng);

// Slice unit. For the sedenions uses the p + q e8 characterisation (p pure
// imaginary octonion, q in span{1, p/|p|}, |p|^2 + |q|^2 = 1); elsewhere
// falls back to Newton-refined imaginary units re-checked through
// is_slice_unit.
Element random_slice_unit(const AlgebraPtr& algebra, Rng& rng);

}  // namespace slicekit
