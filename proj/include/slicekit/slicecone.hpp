#pragma once

#include <optional>
#include <vector>

#include "slicekit/algebra.hpp"
#include "slicekit/linalg.hpp"

namespace slicekit {

// Point of the slice cone over d variables: x + y I with x, y in R^d and I a
// slice unit. Real points (y = 0) carry no unit. Canonical form fixes the
// sign ambiguity x + yI = x + (-y)(-I) by orienting the unit so that its
// first coefficient above 1e-12 in absolute value is positive.
struct SlicePoint {
    Eigen::Index d = 0;
    Vec x;
    Vec y;
    std::optional<Element> unit;

    bool is_real() const { return !unit.has_value(); }
};

// Builds the canonical point for (x, y, I). Drops the unit when y = 0.
SlicePoint psi_embed(const Vec& x, const Vec& y, const Element& unit);

SlicePoint canonical_point(SlicePoint p);

// The unit oriented into the positive cone (first coefficient above 1e-12
// positive).
Element canonical_unit(const Element& unit);

// Componentwise equality of canonical forms within tol.
bool same_point(const SlicePoint& a, const SlicePoint& b, double tol = 1e-12);

// Sampled path in the upper half space: samples (t_i, x_i, y_i) with t
// strictly increasing from 0 to 1 and y(0) = 0 (real start).
class SlicePath {
public:
    struct Sample {
        double t;
        Vec x;
        Vec y;
    };

    static SlicePath from_samples(Eigen::Index d, std::vector<Sample> samples);

    Eigen::Index d() const { return d_; }
    const std::vector<Sample>& samples() const { return samples_; }
    std::size_t size() const { return samples_.size(); }

    // Linear interpolation at parameter t in [0, 1].
    Sample at(double t) const;

private:
    SlicePath() = default;
    Eigen::Index d_ = 0;
    std::vector<Sample> samples_;
};

// The path pushed to slice I: sequence of canonical points psi(x_i, y_i, I).
std::vector<SlicePoint> embed_path(const SlicePath& path, const Element& unit);

// Reparametrised prefix gamma[t](s) = gamma(t s); the cut point is obtained
// by linear interpolation. t = 0 yields the constant path at gamma(0).
SlicePath path_prefix(const SlicePath& path, double t);

// Axis-aligned box over (x, |y|): x_lo <= x <= x_hi and y_lo <= |y| <= y_hi
// componentwise.
struct Box {
    Vec x_lo, x_hi, y_lo, y_hi;
    bool contains(const Vec& x, const Vec& yabs) const;
};

// Domain over the slice cone.
//  WHOLE_CONE    everything is inside.
//  CIRCULARIZED  membership depends only on (x, |y|): a shared box list.
//  SLICEWISE     per-unit box lists keyed by canonical unit; units absent
//                from the map have empty domains on their slice. A real point
//                is on every slice, so it is inside iff some listed slice
//                contains (x, 0).
class DomainSpec {
public:
    enum class Variant { WholeCone, Circularized, Slicewise };

    static DomainSpec whole_cone();
    static DomainSpec circularized(std::vector<Box> boxes);
    static DomainSpec slicewise(std::vector<std::pair<Element, std::vector<Box>>> slices);

    Variant variant() const { return variant_; }
    const std::vector<Box>& boxes() const { return boxes_; }
    const std::vector<std::pair<Element, std::vector<Box>>>& slices() const { return slices_; }

    bool contains(const SlicePoint& p) const;

private:
    Variant variant_ = Variant::WholeCone;
    std::vector<Box> boxes_;                                    // CIRCULARIZED
    std::vector<std::pair<Element, std::vector<Box>>> slices_;  // SLICEWISE
};

// Candidates I whose embedded path stays inside the domain: every sample of
// gamma^I must lie in omega. Preserves candidate order.
std::vector<Element> admissible_units(const SlicePath& path, const DomainSpec& omega,
                                      const std::vector<Element>& candidates);

}  // namespace slicekit
