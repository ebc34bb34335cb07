// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace cellcov {

/// Deterministic per-trial random stream. Each stream's state is derived
/// from (seed, stream index) through splitmix-style mixing, so streams are
/// independent of execution order and thread layout: trial i always sees the
/// same draws.
class trial_stream {
public:
    trial_stream(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64();

    /// Uniform on (0, 1); never returns 0 or 1.
    double uniform();

    /// Standard normal via Box-Muller (fixed draw count per pair).
    double normal();

    /// Poisson sample; exact inversion for small means, transformed
    /// rejection for large ones.
    long poisson(double mean);

    /// Chi-square power gain with 2*half_dof degrees of freedom (mean
    /// 2*half_dof): sum of half_dof exponentials of mean 2.
    double chi_square_gain(int half_dof);

    /// Noncentral chi-square gain with the given noncentrality and (even)
    /// degrees of freedom.
    double noncentral_chi_square_gain(double noncentrality, int dof);

private:
    std::uint64_t state_;
    bool have_cached_normal_ = false;
    double cached_normal_ = 0.0;
};

}  // namespace cellcov
