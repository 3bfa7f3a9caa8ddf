#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <random>

namespace slicekit {

// Seeded random source used everywhere randomness is called for. The bit
// stream comes from std::mt19937_64; the uniform/normal mappings are done
// here because the standard distributions are allowed to differ between
// standard library implementations, and seeded runs must reproduce exactly.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Standard normal via Box-Muller; draws are made in pairs.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    Eigen::VectorXd normal_vector(Eigen::Index n) {
        Eigen::VectorXd v(n);
        for (Eigen::Index i = 0; i < n; ++i) v[i] = normal();
        return v;
    }

    // Uniform on the unit sphere in R^n.
    Eigen::VectorXd unit_vector(Eigen::Index n) {
        Eigen::VectorXd v;
        double norm = 0.0;
        do {
            v = normal_vector(n);
            norm = v.norm();
        } while (norm < 1e-12);
        return v / norm;
    }

    std::uint64_t bits() { return gen_(); }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace slicekit
