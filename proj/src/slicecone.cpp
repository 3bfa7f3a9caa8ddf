#include "slicekit/slicecone.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace slicekit {

namespace {

std::invalid_argument bad(const std::string& msg) { return std::invalid_argument(msg); }

// First coefficient of the unit above the canonicalisation threshold; the
// sign of that coefficient orients the unit into the positive cone.
int orientation(const Element& unit) {
    const auto& c = unit.coeffs();
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        if (std::abs(c[i]) > 1e-12) return c[i] > 0.0 ? 1 : -1;
    }
    throw bad("cannot canonicalise a numerically zero unit");
}

}  // namespace

SlicePoint psi_embed(const Vec& x, const Vec& y, const Element& unit) {
    if (x.size() != y.size()) throw bad("psi_embed: x and y sizes differ");
    SlicePoint p;
    p.d = x.size();
    p.x = x;
    p.y = y;
    p.unit = unit;
    return canonical_point(std::move(p));
}

SlicePoint canonical_point(SlicePoint p) {
    if (p.x.size() != p.d || p.y.size() != p.d)
        throw bad("slice point has inconsistent dimensions");
    if (p.y.norm() == 0.0) {
        p.unit.reset();
        return p;
    }
    if (!p.unit) throw bad("non-real slice point needs a unit");
    if (orientation(*p.unit) < 0) {
        p.unit = -*p.unit;
        p.y = -p.y;
    }
    return p;
}

Element canonical_unit(const Element& unit) {
    return orientation(unit) < 0 ? -unit : unit;
}

bool same_point(const SlicePoint& a, const SlicePoint& b, double tol) {
    const SlicePoint ca = canonical_point(a);
    const SlicePoint cb = canonical_point(b);
    if (ca.d != cb.d) return false;
    if ((ca.x - cb.x).lpNorm<Eigen::Infinity>() > tol) return false;
    if ((ca.y - cb.y).lpNorm<Eigen::Infinity>() > tol) return false;
    if (ca.is_real() != cb.is_real()) return false;
    if (ca.is_real()) return true;
    if (ca.unit->dim() != cb.unit->dim()) return false;
    return (ca.unit->coeffs() - cb.unit->coeffs()).lpNorm<Eigen::Infinity>() <= tol;
}

SlicePath SlicePath::from_samples(Eigen::Index d, std::vector<Sample> samples) {
    if (d < 1) throw bad("path needs at least one variable");
    if (samples.size() < 2) throw bad("path needs at least two samples");
    if (samples.front().t != 0.0) throw bad("path must start at t = 0");
    if (samples.back().t != 1.0) throw bad("path must end at t = 1");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (samples[i].x.size() != d || samples[i].y.size() != d)
            throw bad("path sample has wrong dimension");
        if (i > 0 && samples[i].t <= samples[i - 1].t)
            throw bad("path parameters must increase strictly");
    }
    if (samples.front().y.norm() != 0.0) throw bad("path must start at a real point (y(0) = 0)");
    SlicePath p;
    p.d_ = d;
    p.samples_ = std::move(samples);
    return p;
}

SlicePath::Sample SlicePath::at(double t) const {
    if (t < 0.0 || t > 1.0) throw bad("path parameter outside [0, 1]");
    const auto it = std::lower_bound(
        samples_.begin(), samples_.end(), t,
        [](const Sample& s, double value) { return s.t < value; });
    if (it == samples_.begin()) return samples_.front();
    if (it == samples_.end()) return samples_.back();
    const Sample& hi = *it;
    if (hi.t == t) return hi;
    const Sample& lo = *(it - 1);
    const double w = (t - lo.t) / (hi.t - lo.t);
    Sample out;
    out.t = t;
    out.x = (1.0 - w) * lo.x + w * hi.x;
    out.y = (1.0 - w) * lo.y + w * hi.y;
    return out;
}

std::vector<SlicePoint> embed_path(const SlicePath& path, const Element& unit) {
    std::vector<SlicePoint> points;
    points.reserve(path.size());
    for (const auto& s : path.samples()) points.push_back(psi_embed(s.x, s.y, unit));
    return points;
}

SlicePath path_prefix(const SlicePath& path, double t) {
    if (t < 0.0 || t > 1.0) throw bad("prefix parameter outside [0, 1]");
    std::vector<SlicePath::Sample> out;
    if (t == 0.0) {
        auto start = path.samples().front();
        out.push_back({0.0, start.x, start.y});
        out.push_back({1.0, start.x, start.y});
        return SlicePath::from_samples(path.d(), std::move(out));
    }
    for (const auto& s : path.samples()) {
        if (s.t >= t) break;
        out.push_back({s.t / t, s.x, s.y});
    }
    const auto cut = path.at(t);
    out.push_back({1.0, cut.x, cut.y});
    return SlicePath::from_samples(path.d(), std::move(out));
}

bool Box::contains(const Vec& x, const Vec& yabs) const {
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (x[i] < x_lo[i] || x[i] > x_hi[i]) return false;
        if (yabs[i] < y_lo[i] || yabs[i] > y_hi[i]) return false;
    }
    return true;
}

DomainSpec DomainSpec::whole_cone() { return DomainSpec(); }

DomainSpec DomainSpec::circularized(std::vector<Box> boxes) {
    DomainSpec d;
    d.variant_ = Variant::Circularized;
    d.boxes_ = std::move(boxes);
    return d;
}

DomainSpec DomainSpec::slicewise(std::vector<std::pair<Element, std::vector<Box>>> slices) {
    DomainSpec d;
    d.variant_ = Variant::Slicewise;
    d.slices_ = std::move(slices);
    for (auto& [unit, boxes] : d.slices_) unit = canonical_unit(unit);  // key by canonical form
    return d;
}

namespace {

bool in_any(const std::vector<Box>& boxes, const Vec& x, const Vec& yabs) {
    for (const auto& b : boxes)
        if (b.contains(x, yabs)) return true;
    return false;
}

}  // namespace

bool DomainSpec::contains(const SlicePoint& point) const {
    const SlicePoint p = canonical_point(point);
    const Vec yabs = p.y.cwiseAbs();
    switch (variant_) {
        case Variant::WholeCone:
            return true;
        case Variant::Circularized:
            return in_any(boxes_, p.x, yabs);
        case Variant::Slicewise: {
            if (p.is_real()) {
                // A real point lies on every slice; membership through any of
                // the listed slices counts.
                for (const auto& [unit, boxes] : slices_)
                    if (in_any(boxes, p.x, yabs)) return true;
                return false;
            }
            for (const auto& [unit, boxes] : slices_) {
                if (unit.dim() != p.unit->dim()) continue;
                if ((unit.coeffs() - p.unit->coeffs()).lpNorm<Eigen::Infinity>() <= 1e-12)
                    return in_any(boxes, p.x, yabs);
            }
            return false;  // unit absent from the map: empty slice domain
        }
    }
    return false;
}

std::vector<Element> admissible_units(const SlicePath& path, const DomainSpec& omega,
                                      const std::vector<Element>& candidates) {
    std::vector<Element> out;
    for (const auto& cand : candidates) {
        const auto points = embed_path(path, cand);
        const bool ok = std::all_of(points.begin(), points.end(),
                                    [&](const SlicePoint& p) { return omega.contains(p); });
        if (ok) out.push_back(cand);
    }
    return out;
}

}  // namespace slicekit
