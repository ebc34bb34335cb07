// SPDX-License-Identifier: Apache-2.0
#include "cellcov/rng.hpp"

#include <cmath>
#include <numbers>

#include "cellcov/errors.hpp"

namespace cellcov {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

trial_stream::trial_stream(std::uint64_t seed, std::uint64_t stream)
    : state_(mix64(seed + kGolden * (stream + 1))) {}

std::uint64_t trial_stream::next_u64() {
    state_ += kGolden;
    return mix64(state_);
}

double trial_stream::uniform() {
    // 53 random bits in (0,1); the +0.5 offset keeps both endpoints open.
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double trial_stream::normal() {
    if (have_cached_normal_) {
        have_cached_normal_ = false;
        return cached_normal_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    cached_normal_ = r * std::sin(theta);
    have_cached_normal_ = true;
    return r * std::cos(theta);
}

long trial_stream::poisson(double mean) {
    if (!(mean >= 0.0)) throw domain_error("trial_stream::poisson: mean must be >= 0");
    if (mean == 0.0) return 0;
    if (mean < 30.0) {
        // Inversion by sequential search.
        const double target = uniform();
        double p = std::exp(-mean);
        double cdf = p;
        long k = 0;
        while (cdf < target && k < 10000) {
            ++k;
            p *= mean / static_cast<double>(k);
            cdf += p;
        }
        return k;
    }
    // Transformed rejection (Hormann's PTRS); deterministic per stream.
    const double b = 0.931 + 2.53 * std::sqrt(mean);
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        double u = uniform() - 0.5;
        double v = uniform();
        const double us = 0.5 - std::abs(u);
        const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= v_r) return static_cast<long>(k);
        if (k < 0.0 || (us < 0.013 && v > us)) continue;
        const double lhs = std::log(v * inv_alpha / (a / (us * us) + b));
        const double rhs = -mean + k * std::log(mean) - std::lgamma(k + 1.0);
        if (lhs <= rhs) return static_cast<long>(k);
    }
}

double trial_stream::chi_square_gain(int half_dof) {
    if (half_dof < 1) throw domain_error("trial_stream::chi_square_gain: half_dof must be >= 1");
    double g = 0.0;
    for (int i = 0; i < half_dof; ++i) g -= 2.0 * std::log(uniform());
    return g;
}

double trial_stream::noncentral_chi_square_gain(double noncentrality, int dof) {
    if (dof < 1) throw domain_error("trial_stream::noncentral_chi_square_gain: dof must be >= 1");
    if (!(noncentrality >= 0.0))
        throw domain_error("trial_stream::noncentral_chi_square_gain: noncentrality must be >= 0");
    const double shifted = normal() + std::sqrt(noncentrality);
    double g = shifted * shifted;
    for (int i = 1; i < dof; ++i) {
        const double z = normal();
        g += z * z;
    }
    return g;
}

}  // namespace cellcov
