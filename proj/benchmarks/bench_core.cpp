// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "cellcov/analytic.hpp"
#include "cellcov/montecarlo.hpp"
#include "cellcov/specfun.hpp"

using namespace cellcov;

namespace {

network_config ref_cfg(double lambda, int na) {
    network_config cfg;
    cfg.lambda = lambda;
    cfg.delta_h = 2.0;
    cfg.tau = 10.0;
    cfg.n_antennas = na;
    return cfg;
}

void BM_omega1(benchmark::State& state) {
    const double x = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(omega1(x, 4.0));
}
BENCHMARK(BM_omega1)->Arg(1)->Arg(100)->Arg(1000000);

void BM_delta(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(delta(10.0, 3.3));
}
BENCHMARK(BM_delta);

void BM_cp_siso_sspm(benchmark::State& state) {
    const auto m = pathloss_model::single_slope(4.0);
    const auto cfg = ref_cfg(1e-4, 1);
    for (auto _ : state) benchmark::DoNotOptimize(cp_siso(m, cfg));
}
BENCHMARK(BM_cp_siso_sspm);

void BM_cp_siso_dspm(benchmark::State& state) {
    const auto m = pathloss_model::dual_slope(2.5, 4.0, 10.0);
    const auto cfg = ref_cfg(1e-4, 1);
    for (auto _ : state) benchmark::DoNotOptimize(cp_siso(m, cfg));
}
BENCHMARK(BM_cp_siso_dspm);

void BM_cp_miso_exact(benchmark::State& state) {
    const auto m = pathloss_model::dual_slope(2.5, 4.0, 10.0);
    const auto cfg = ref_cfg(1e-4, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(cp_miso_exact(m, cfg));
}
BENCHMARK(BM_cp_miso_exact)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_mc_trials(benchmark::State& state) {
    const auto m = pathloss_model::dual_slope(2.5, 4.0, 10.0);
    const auto cfg = ref_cfg(1e-4, 4);
    const double radius = resolved_window_radius(m, cfg, sim_spec{});
    std::uint64_t i = 0;
    for (auto _ : state) {
        trial_stream rng(7, i++);
        benchmark::DoNotOptimize(
            simulate_trial(m, cfg, fading_spec::beamforming(), rng, radius));
    }
}
BENCHMARK(BM_mc_trials);

}  // namespace

BENCHMARK_MAIN();
