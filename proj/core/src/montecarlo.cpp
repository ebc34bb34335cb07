// SPDX-License-Identifier: Apache-2.0
#include "cellcov/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

#include "cellcov/analytic.hpp"
#include "cellcov/errors.hpp"

namespace cellcov {

namespace {

constexpr double kPi = std::numbers::pi;

double draw_gain(trial_stream& rng, const fading_spec& fading, bool desired, int n_antennas) {
    switch (fading.kind) {
        case fading_kind::rayleigh:
            return rng.chi_square_gain(1);
        case fading_kind::beamforming:
            return rng.chi_square_gain(desired ? n_antennas : 1);
        case fading_kind::rice:
            return rng.noncentral_chi_square_gain(fading.rice_noncentrality, fading.rice_dof);
    }
    return 0.0;
}

}  // namespace

void sim_spec::validate() const {
    if (trials < 100) throw domain_error("sim_spec: trials must be >= 100");
    if (min_expected_bs < 1) throw domain_error("sim_spec: min_expected_bs must be >= 1");
}

double resolved_window_radius(const pathloss_model& model, const network_config& cfg,
                              const sim_spec& sim) {
    if (sim.window_radius > 0.0) return sim.window_radius;
    const double by_count = std::sqrt(sim.min_expected_bs / (kPi * cfg.lambda));
    const double r_last =
        model.breakpoints().empty() ? 0.0 : model.breakpoints().back();
    return std::max({by_count, 10.0 * r_last, 100.0 * cfg.delta_h});
}

namespace detail {

bool simulate_trial_scaled(const pathloss_model& model, const network_config& cfg,
                           const fading_spec& fading, trial_stream& rng, double window_radius,
                           double gain_scale) {
    if (fading.kind == fading_kind::rice && (fading.rice_dof < 1 || fading.rice_dof % 2 != 0))
        throw domain_error("simulate_trial: rice_dof must be a positive even integer");

    const double mean_count = cfg.lambda * kPi * window_radius * window_radius;
    const long count = rng.poisson(mean_count);
    if (count == 0) return false;  // no server anywhere in the window

    // Ground distances; uniform in the disc means r = R sqrt(U). Angles
    // never enter the SIR.
    std::vector<double> ground(static_cast<size_t>(count));
    for (long i = 0; i < count; ++i)
        ground[static_cast<size_t>(i)] = window_radius * std::sqrt(rng.uniform());
    const size_t serving =
        static_cast<size_t>(std::min_element(ground.begin(), ground.end()) - ground.begin());

    const double d0 = std::hypot(ground[serving], cfg.delta_h);
    const double desired =
        gain_scale * draw_gain(rng, fading, true, cfg.n_antennas) * cfg.power * model.gain(d0);

    double interference = 0.0;
    for (size_t i = 0; i < ground.size(); ++i) {
        if (i == serving) continue;
        const double d = std::hypot(ground[i], cfg.delta_h);
        interference +=
            gain_scale * draw_gain(rng, fading, false, cfg.n_antennas) * cfg.power * model.gain(d);
    }
    if (interference == 0.0) return true;  // lone station: SIR unbounded
    return desired / interference > cfg.tau;
}

double wilson_halfwidth(double p_hat, long n) {
    constexpr double z = 1.959963984540054;  // 97.5% normal quantile
    const double nn = static_cast<double>(n);
    const double z2 = z * z;
    return z / (1.0 + z2 / nn) *
           std::sqrt(p_hat * (1.0 - p_hat) / nn + z2 / (4.0 * nn * nn));
}

}  // namespace detail

bool simulate_trial(const pathloss_model& model, const network_config& cfg,
                    const fading_spec& fading, trial_stream& rng, double window_radius) {
    return detail::simulate_trial_scaled(model, cfg, fading, rng, window_radius, 1.0);
}

cp_estimate estimate_cp(const pathloss_model& model, const network_config& cfg,
                        const fading_spec& fading, const sim_spec& sim, int threads) {
    cfg.validate();
    sim.validate();
    if (threads < 1) throw domain_error("estimate_cp: threads must be >= 1");
    const double radius = resolved_window_radius(model, cfg, sim);

    const long n = sim.trials;
    std::vector<long> successes(static_cast<size_t>(threads), 0);
    auto run_chunk = [&](int t) {
        const long begin = n * t / threads;
        const long end = n * (t + 1) / threads;
        long ok = 0;
        for (long i = begin; i < end; ++i) {
            trial_stream rng(sim.seed, static_cast<std::uint64_t>(i));
            if (simulate_trial(model, cfg, fading, rng, radius)) ++ok;
        }
        successes[static_cast<size_t>(t)] = ok;
    };

    if (threads == 1) {
        run_chunk(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(run_chunk, t);
        for (auto& th : pool) th.join();
    }

    long total = 0;
    for (long s : successes) total += s;

    cp_estimate est;
    est.mean = static_cast<double>(total) / static_cast<double>(n);
    est.ci_halfwidth = detail::wilson_halfwidth(est.mean, n);
    est.trials = n;
    est.seed = sim.seed;
    return est;
}

cp_st_point estimate_st(const pathloss_model& model, const network_config& cfg,
                        const fading_spec& fading, const sim_spec& sim, int threads) {
    const cp_estimate est = estimate_cp(model, cfg, fading, sim, threads);
    cp_st_point p;
    p.lambda = cfg.lambda;
    p.cp = est.mean;
    p.st = st_from_cp(cfg.lambda, est.mean, cfg.tau);
    p.tag = method::monte_carlo;
    return p;
}

}  // namespace cellcov
