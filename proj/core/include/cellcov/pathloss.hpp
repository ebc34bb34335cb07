// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

namespace cellcov {

/// Piecewise power-law pathloss: gain K_n x^(-alpha_n) on [R_n, R_{n+1}),
/// with R_0 = 0 and R_N = infinity implicit. The amplitudes K_n are fixed by
/// continuity at every breakpoint (K_0 = 1). One slope gives the classic
/// single-slope model; two slopes the dual-slope model with a corner
/// distance R_1.
class pathloss_model {
public:
    /// Builds a model from slopes alpha_0..alpha_{N-1} and breakpoints
    /// R_1..R_{N-1}. Throws domain_error naming the violated invariant:
    /// breakpoints must be positive and strictly increasing, exponents
    /// nonnegative and nondecreasing, the last exponent > 2, and
    /// |exponents| == |breakpoints| + 1.
    pathloss_model(std::vector<double> exponents, std::vector<double> breakpoints);

    static pathloss_model single_slope(double alpha0);
    static pathloss_model dual_slope(double alpha0, double alpha1, double r1);

    /// Gain K_n x^(-alpha_n) at distance x > 0; continuous and nonincreasing.
    double gain(double x) const;

    /// Segment index n with R_n <= x < R_{n+1}.
    int segment(double x) const;

    int slope_count() const { return static_cast<int>(exponents_.size()); }
    double exponent(int n) const { return exponents_[static_cast<size_t>(n)]; }
    /// Breakpoint R_n for n in [1, N-1].
    double breakpoint(int n) const { return breakpoints_[static_cast<size_t>(n - 1)]; }
    const std::vector<double>& exponents() const { return exponents_; }
    const std::vector<double>& breakpoints() const { return breakpoints_; }

    /// Amplitude K_n; accumulated in log space so many slopes with large
    /// breakpoints cannot overflow.
    double amplitude(int n) const;
    double log_amplitude(int n) const { return log_amplitudes_[static_cast<size_t>(n)]; }

private:
    std::vector<double> exponents_;
    std::vector<double> breakpoints_;
    std::vector<double> log_amplitudes_;
};

/// Two-ray corner distance 4 h_t h_r f_c / c for transmit/receive antenna
/// heights (m) and carrier frequency (Hz).
double corner_distance(double h_t, double h_r, double f_c);

}  // namespace cellcov
