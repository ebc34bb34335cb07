// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "cellcov/network.hpp"
#include "cellcov/pathloss.hpp"
#include "cellcov/rng.hpp"

namespace cellcov {

enum class fading_kind { rayleigh, beamforming, rice };

/// Small-scale fading convention for a simulated link set.
///  - rayleigh: desired and interferer power gains chi-square with 2 dof.
///  - beamforming: desired chi-square with 2*n_antennas dof, interferers 2.
///  - rice: desired and interferers noncentral chi-square with the given
///    noncentrality and (even) degrees of freedom, used unnormalized.
struct fading_spec {
    fading_kind kind = fading_kind::rayleigh;
    double rice_noncentrality = 1.0;
    int rice_dof = 12;

    static fading_spec rayleigh() { return {fading_kind::rayleigh, 0.0, 0}; }
    static fading_spec beamforming() { return {fading_kind::beamforming, 0.0, 0}; }
    static fading_spec rice(double noncentrality, int dof) {
        return {fading_kind::rice, noncentrality, dof};
    }
};

/// Simulation budget and geometry. window_radius <= 0 selects the automatic
/// radius max(sqrt(min_expected_bs/(pi lambda)), 10 R_last, 100 delta_h),
/// which keeps the expected station count at least min_expected_bs and the
/// truncated far-field interference negligible.
struct sim_spec {
    long trials = 40000;
    std::uint64_t seed = 1;
    double window_radius = 0.0;  // meters; <= 0 means auto
    int min_expected_bs = 300;

    void validate() const;
};

/// Coverage estimate with a 95% Wilson confidence half-width.
struct cp_estimate {
    double mean = 0.0;
    double ci_halfwidth = 0.0;
    long trials = 0;
    std::uint64_t seed = 0;
};

double resolved_window_radius(const pathloss_model& model, const network_config& cfg,
                              const sim_spec& sim);

/// One network realization: stations dropped in a disc around the typical
/// user, nearest-station association by ground distance, fading drawn per
/// spec; returns whether the SIR clears cfg.tau. A draw with no station in
/// the window counts as uncovered; an interference-free draw as covered.
bool simulate_trial(const pathloss_model& model, const network_config& cfg,
                    const fading_spec& fading, trial_stream& rng, double window_radius);

/// Success fraction over sim.trials independent trials, each on its own
/// (seed, index)-derived stream; the estimate is bit-identical for any
/// thread count.
cp_estimate estimate_cp(const pathloss_model& model, const network_config& cfg,
                        const fading_spec& fading, const sim_spec& sim, int threads = 1);

/// estimate_cp wrapped into a throughput point (method monte_carlo).
cp_st_point estimate_st(const pathloss_model& model, const network_config& cfg,
                        const fading_spec& fading, const sim_spec& sim, int threads = 1);

namespace detail {

/// Trial body with a common multiplier applied to every fading gain; the
/// outcome must not depend on it (threshold test is scale-free).
bool simulate_trial_scaled(const pathloss_model& model, const network_config& cfg,
                           const fading_spec& fading, trial_stream& rng, double window_radius,
                           double gain_scale);

double wilson_halfwidth(double p_hat, long n);

}  // namespace detail

}  // namespace cellcov
