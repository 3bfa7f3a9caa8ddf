#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "slicekit/algebra.hpp"
#include "slicekit/linalg.hpp"

namespace slicekit {

// Thrown by two_point_inverse when L_J1 - L_J2 is numerically singular
// (smallest singular value <= 1e-8 times the largest).
class SingularDifferenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Ordered tuple of slice units of one algebra; every entry is validated
// through is_slice_unit at 1e-10.
struct UnitTuple {
    AlgebraPtr algebra;
    std::vector<Element> units;
    std::vector<Mat> lmats;  // left multiplication matrices, one per unit

    std::size_t k() const { return units.size(); }
    Eigen::Index twon() const { return static_cast<Eigen::Index>(algebra->dim()); }
};

UnitTuple make_unit_tuple(std::vector<Element> units);

// Linear system tying slice samples to stem values. For J = (J_1..J_k) over
// an algebra of dimension 2n:
//   z        stacked blocks (Id | L_{J_l}), size 2nk x 4n
//   dj       blockdiag of the adapted bases D_{J_l}, size 2nk x 2nk
//   zplus    pinv(dj^-1 * z) * dj^-1, size 4n x 2nk
//   kerbasis orthonormal basis of the joint kernel of the (Id | L_{J_l})
struct ZetaSystem {
    UnitTuple tuple;
    Mat z;
    Mat dj;
    Mat zplus;
    Mat kerbasis;

    Eigen::Index kernel_dim() const { return kerbasis.cols(); }
};

ZetaSystem build_zeta(const UnitTuple& tuple, BasisOrder order = BasisOrder::Forward);

// I belongs to the kernel cone of the system: (Id | L_I) annihilates the
// joint kernel, |(Id | L_I) * kerbasis| <= tol. Vacuously true when the
// kernel is trivial.
bool kernel_membership(const Element& unit, const ZetaSystem& sys, double tol = 1e-9);

struct SliceSolution {
    UnitTuple tuple;
    std::vector<std::size_t> chosen;  // indices into the candidate list
    Eigen::Index kernel_dim;
};

// Greedy tuple selection: starting from the empty tuple, repeatedly append
// the first candidate that strictly reduces the joint kernel dimension, and
// stop when none does. On return every candidate lies in the kernel cone of
// the selected tuple.
SliceSolution slice_solution(const std::vector<Element>& candidates);

// Explicit inverse of the stacked two-slice matrix [[Id, L_J1], [Id, L_J2]]:
//   [[ (L1-L2)^-1 L1, -(L1-L2)^-1 L2 ],
//    [ (L1-L2)^-1,    -(L1-L2)^-1    ]]
// Requires L_J1 - L_J2 to be safely invertible.
Mat two_point_inverse(const Element& j1, const Element& j2);

// Stem value F = (a, b): the slice sample on unit I is a + L_I b.
struct StemValue {
    Vec a;
    Vec b;
    Vec stacked() const;
};

struct StemResult {
    StemValue f;
    double residual;  // |z F - stack(values)| / |stack(values)| (absolute when the data is 0)
};

// Minimal-norm stem through the sampled slice values (one 2n-vector per
// tuple entry). residual ~ 0 certifies a consistent stem; a large residual
// is data, not an error.
StemResult stem_solve(const std::vector<Vec>& values, const ZetaSystem& sys);

// Representation-formula reconstruction (Id | L_I) * zplus * stack(values).
// When I is outside the kernel cone the result is not guaranteed; a note is
// emitted on stderr and the value is computed anyway.
Vec reconstruct(const std::vector<Vec>& values, const ZetaSystem& sys, const Element& unit);

// Per-sample reconstruction along a path; values[s][l] is the sample at
// path position s on slice J_l. Warns at most once per call.
std::vector<Vec> reconstruct_path(const std::vector<std::vector<Vec>>& values,
                                  const ZetaSystem& sys, const Element& unit);

// Two-slice reconstruction through the explicit block inverse.
Vec reconstruct_two_point(const std::array<Vec, 2>& values, const Element& j1,
                          const Element& j2, const Element& unit);

// Same reconstruction in expanded classical form
//   (L_I - L_J2)[(L_J1 - L_J2)^-1 v1] - (L_I - L_J1)[(L_J1 - L_J2)^-1 v2].
Vec reconstruct_classical(const std::array<Vec, 2>& values, const Element& j1,
                          const Element& j2, const Element& unit);

// Residuals of the structural identities of a zeta system at a unit I, with
// sigma = [[0, -Id], [Id, 0]] on R^{4n}:
//   slice_*   L_I (Id | L_I) = s (Id | L_I) sigma for s = +1 / -1
//   tuple_*   diag(J) z = s z sigma for s = +1 / -1
//   orthogonality   |Q^T Q - Id| for Q = dj^-1 diag(J) dj
//   intertwine      |L_I M - M diag(J)| for M = (Id | L_I) zplus
// Sign conventions for (i)-(ii) differ; both are computed and the one that
// verifies is recorded.
struct StructureReport {
    double slice_plus, slice_minus;
    double tuple_plus, tuple_minus;
    double orthogonality;
    double intertwine;
    int resolved_sign;  // +1 or -1, whichever sign fits (i)-(ii) better
};

StructureReport verify_structure_identities(const Element& unit, const ZetaSystem& sys);

// Block diagonal of the left multiplication matrices of the tuple.
Mat tuple_diag(const UnitTuple& tuple);

}  // namespace slicekit
