#include "slicekit/sliceregular.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace slicekit {

namespace {

std::invalid_argument bad(const std::string& msg) { return std::invalid_argument(msg); }

}  // namespace

SlicePolynomial::SlicePolynomial(Eigen::Index d, AlgebraPtr algebra)
    : d_(d), algebra_(std::move(algebra)) {
    if (d_ < 1) throw bad("polynomial needs at least one variable");
    if (!algebra_) throw bad("polynomial needs an algebra");
}

void SlicePolynomial::add_term(MultiIndex alpha, const Element& coeff) {
    if (static_cast<Eigen::Index>(alpha.size()) != d_)
        throw bad("multi-index length does not match variable count");
    for (int a : alpha)
        if (a < 0) throw bad("multi-index entries must be nonnegative");
    if (coeff.algebra().get() != algebra_.get())
        throw bad("coefficient belongs to a different algebra instance");
    auto it = terms_.find(alpha);
    if (it == terms_.end())
        terms_.emplace(std::move(alpha), coeff);
    else
        it->second = it->second + coeff;
}

SlicePolynomial SlicePolynomial::normalized() const {
    SlicePolynomial p(d_, algebra_);
    for (const auto& [alpha, coeff] : terms_)
        if (!coeff.coeffs().isZero(0.0)) p.add_term(alpha, coeff);
    return p;
}

int SlicePolynomial::degree() const {
    int deg = -1;
    for (const auto& [alpha, coeff] : terms_) {
        if (coeff.coeffs().isZero(0.0)) continue;
        int total = 0;
        for (int a : alpha) total += a;
        deg = std::max(deg, total);
    }
    return deg;
}

Element eval(const SlicePolynomial& p, const SlicePoint& z) {
    if (z.d != p.d()) throw bad("evaluation point has wrong variable count");
    const auto& algebra = p.algebra();
    const Eigen::Index dim = static_cast<Eigen::Index>(algebra->dim());

    Mat lmat;
    if (!z.is_real()) {
        if (z.unit->dim() != static_cast<std::size_t>(dim))
            throw bad("slice unit belongs to a different algebra");
        lmat = left_mul_matrix(*z.unit);
    }

    Vec acc = Vec::Zero(dim);
    for (const auto& [alpha, coeff] : p.terms()) {
        if (z.is_real()) {
            double scale = 1.0;
            for (Eigen::Index l = 0; l < p.d(); ++l)
                scale *= std::pow(z.x[l], alpha[static_cast<std::size_t>(l)]);
            acc += scale * coeff.coeffs();
            continue;
        }
        // Apply the commuting operators (x_l + y_l L_I)^alpha_l to the
        // coefficient, variable d first, variable 1 last.
        Vec v = coeff.coeffs();
        for (Eigen::Index l = p.d() - 1; l >= 0; --l) {
            const int power = alpha[static_cast<std::size_t>(l)];
            for (int rep = 0; rep < power; ++rep) v = z.x[l] * v + z.y[l] * (lmat * v);
        }
        acc += v;
    }
    return Element(algebra, std::move(acc));
}

SliceEvaluator slice_evaluator(const SlicePolynomial& p, const Element& unit) {
    if (unit.algebra().get() != p.algebra().get())
        throw bad("slice unit belongs to a different algebra instance");
    auto poly = std::make_shared<SlicePolynomial>(p);
    auto u = std::make_shared<Element>(unit);
    return [poly, u](const Vec& x, const Vec& y) {
        SlicePoint z;
        z.d = x.size();
        z.x = x;
        z.y = y;
        z.unit = *u;
        return eval(*poly, z).coeffs();
    };
}

std::vector<std::pair<Vec, Vec>> make_grid(Eigen::Index d, int points_per_axis,
                                           std::uint64_t seed, double y_min) {
    if (d < 1 || points_per_axis < 1) throw bad("make_grid needs d >= 1 and points >= 1");
    Rng rng(seed);
    // Jittered per-axis values; y stays clear of the real axis.
    std::vector<std::vector<double>> xs(static_cast<std::size_t>(d));
    std::vector<std::vector<double>> ys(static_cast<std::size_t>(d));
    const double y_lo = std::max(y_min, 0.1);
    for (Eigen::Index l = 0; l < d; ++l) {
        for (int j = 0; j < points_per_axis; ++j) {
            const double fx = (j + 0.5 + 0.3 * (rng.uniform() - 0.5)) / points_per_axis;
            const double fy = (j + 0.5 + 0.3 * (rng.uniform() - 0.5)) / points_per_axis;
            xs[static_cast<std::size_t>(l)].push_back(-0.7 + 1.4 * fx);
            ys[static_cast<std::size_t>(l)].push_back(y_lo + (0.9 - y_lo) * fy);
        }
    }

    std::vector<std::pair<Vec, Vec>> grid;
    std::vector<int> odo(static_cast<std::size_t>(2 * d), 0);
    while (true) {
        Vec x(d), y(d);
        for (Eigen::Index l = 0; l < d; ++l) {
            x[l] = xs[static_cast<std::size_t>(l)][static_cast<std::size_t>(odo[static_cast<std::size_t>(l)])];
            y[l] = ys[static_cast<std::size_t>(l)][static_cast<std::size_t>(odo[static_cast<std::size_t>(d + l)])];
        }
        grid.emplace_back(std::move(x), std::move(y));
        std::size_t pos = 0;
        while (pos < odo.size()) {
            if (++odo[pos] < points_per_axis) break;
            odo[pos++] = 0;
        }
        if (pos == odo.size()) break;
    }
    return grid;
}

CrReport cr_residual(const SliceEvaluator& f, const Mat& structure,
                     const std::vector<std::pair<Vec, Vec>>& grid, double h, double tol) {
    if (grid.empty()) throw bad("cr_residual needs a nonempty grid");
    if (h <= 0.0) throw bad("cr_residual needs h > 0");
    const Eigen::Index d = grid.front().first.size();

    CrReport rep;
    rep.per_variable.assign(static_cast<std::size_t>(d), 0.0);
    rep.h = h;
    rep.tol = tol;
    double max_f = 0.0;

    for (const auto& [x, y] : grid) {
        max_f = std::max(max_f, f(x, y).norm());
        for (Eigen::Index l = 0; l < d; ++l) {
            Vec xp = x, xm = x, yp = y, ym = y;
            xp[l] += h;
            xm[l] -= h;
            yp[l] += h;
            ym[l] -= h;
            const Vec dx = (f(xp, y) - f(xm, y)) / (2.0 * h);
            const Vec dy = (f(x, yp) - f(x, ym)) / (2.0 * h);
            const double r = (0.5 * (dx + structure * dy)).norm();
            auto& slot = rep.per_variable[static_cast<std::size_t>(l)];
            slot = std::max(slot, r);
        }
    }
    rep.max_residual = *std::max_element(rep.per_variable.begin(), rep.per_variable.end());
    rep.scale = 1.0 + max_f;
    rep.pass = rep.max_residual <= tol * rep.scale;
    return rep;
}

CrReport cr_residual(const SliceEvaluator& f, const Element& unit,
                     const std::vector<std::pair<Vec, Vec>>& grid, double h, double tol) {
    return cr_residual(f, left_mul_matrix(unit), grid, h, tol);
}

SplitDecomposition split(const SliceEvaluator& f, const Element& unit,
                         const std::vector<std::pair<Vec, Vec>>& grid) {
    if (grid.empty()) throw bad("split needs a nonempty grid");
    SplitDecomposition out;
    out.basis = i_basis(left_mul_matrix(unit));
    const Eigen::Index n = out.basis.n;
    const Eigen::PartialPivLU<Mat> lu(out.basis.d);

    out.components.reserve(grid.size());
    for (const auto& [x, y] : grid) {
        const Vec value = f(x, y);
        const Vec c = lu.solve(value);
        std::vector<std::complex<double>> comps(static_cast<std::size_t>(n));
        for (Eigen::Index l = 0; l < n; ++l)
            comps[static_cast<std::size_t>(l)] = {c[l], c[n + l]};
        out.components.push_back(std::move(comps));
        out.recomposition_residual =
            std::max(out.recomposition_residual, (out.basis.d * c - value).norm());
    }
    return out;
}

SliceEvaluator split_component_evaluator(const SliceEvaluator& f, const IBasis& basis,
                                         Eigen::Index component) {
    if (component < 0 || component >= basis.n) throw bad("split component out of range");
    auto lu = std::make_shared<Eigen::PartialPivLU<Mat>>(basis.d);
    const Eigen::Index n = basis.n;
    return [f, lu, n, component](const Vec& x, const Vec& y) {
        const Vec c = lu->solve(f(x, y));
        Vec out(2);
        out << c[component], c[n + component];
        return out;
    };
}

IdentityProbeReport identity_probe(const SlicePolynomial& p, const SlicePolynomial& q,
                                   const std::vector<SlicePoint>& region, double tol) {
    if (region.empty()) throw bad("identity_probe needs at least one sample point");
    IdentityProbeReport rep;
    for (const auto& z : region) {
        const double diff = (eval(p, z) - eval(q, z)).coeffs().lpNorm<Eigen::Infinity>();
        rep.max_sample_diff = std::max(rep.max_sample_diff, diff);
    }
    rep.samples_equal = rep.max_sample_diff <= tol;

    const SlicePolynomial pn = p.normalized();
    const SlicePolynomial qn = q.normalized();
    rep.coeffs_equal = true;
    auto account = [&](const SlicePolynomial& a, const SlicePolynomial& b) {
        for (const auto& [alpha, coeff] : a.terms()) {
            const auto it = b.terms().find(alpha);
            const double diff = (it == b.terms().end())
                                    ? coeff.coeffs().lpNorm<Eigen::Infinity>()
                                    : (coeff.coeffs() - it->second.coeffs())
                                          .lpNorm<Eigen::Infinity>();
            rep.coeff_max_diff = std::max(rep.coeff_max_diff, diff);
            if (diff != 0.0) rep.coeffs_equal = false;
        }
    };
    account(pn, qn);
    account(qn, pn);
    rep.agree = (rep.samples_equal == rep.coeffs_equal);
    return rep;
}

}  // namespace slicekit
