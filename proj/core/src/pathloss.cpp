// SPDX-License-Identifier: Apache-2.0
#include "cellcov/pathloss.hpp"

#include <algorithm>
#include <cmath>

#include "cellcov/errors.hpp"

namespace cellcov {

pathloss_model::pathloss_model(std::vector<double> exponents, std::vector<double> breakpoints)
    : exponents_(std::move(exponents)), breakpoints_(std::move(breakpoints)) {
    if (exponents_.empty()) throw domain_error("pathloss_model: needs at least one exponent");
    if (exponents_.size() != breakpoints_.size() + 1)
        throw domain_error("pathloss_model: |exponents| must equal |breakpoints| + 1");
    for (size_t i = 0; i < breakpoints_.size(); ++i) {
        if (!(breakpoints_[i] > 0.0))
            throw domain_error("pathloss_model: breakpoints must be positive");
        if (i > 0 && !(breakpoints_[i] > breakpoints_[i - 1]))
            throw domain_error("pathloss_model: breakpoints must be strictly increasing");
    }
    for (size_t i = 0; i < exponents_.size(); ++i) {
        if (!(exponents_[i] >= 0.0))
            throw domain_error("pathloss_model: exponents must be nonnegative");
        if (i > 0 && !(exponents_[i] >= exponents_[i - 1]))
            throw domain_error("pathloss_model: exponents must be nondecreasing");
    }
    if (!(exponents_.back() > 2.0))
        throw domain_error("pathloss_model: final exponent must exceed 2");

    log_amplitudes_.assign(exponents_.size(), 0.0);
    for (size_t n = 1; n < exponents_.size(); ++n)
        log_amplitudes_[n] = log_amplitudes_[n - 1] +
                             (exponents_[n] - exponents_[n - 1]) * std::log(breakpoints_[n - 1]);
}

pathloss_model pathloss_model::single_slope(double alpha0) {
    return pathloss_model({alpha0}, {});
}

pathloss_model pathloss_model::dual_slope(double alpha0, double alpha1, double r1) {
    return pathloss_model({alpha0, alpha1}, {r1});
}

int pathloss_model::segment(double x) const {
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    return static_cast<int>(it - breakpoints_.begin());
}

double pathloss_model::amplitude(int n) const {
    return std::exp(log_amplitudes_[static_cast<size_t>(n)]);
}

double pathloss_model::gain(double x) const {
    if (!(x > 0.0)) throw domain_error("pathloss_model::gain: distance must be positive");
    const size_t n = static_cast<size_t>(segment(x));
    return std::exp(log_amplitudes_[n] - exponents_[n] * std::log(x));
}

double corner_distance(double h_t, double h_r, double f_c) {
    if (!(h_t >= 0.0) || !(h_r >= 0.0))
        throw domain_error("corner_distance: antenna heights must be >= 0");
    if (!(f_c > 0.0)) throw domain_error("corner_distance: carrier frequency must be > 0");
    constexpr double speed_of_light = 3e8;
    return 4.0 * h_t * h_r * f_c / speed_of_light;
}

}  // namespace cellcov
