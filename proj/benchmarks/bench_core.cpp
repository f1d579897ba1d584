#include <benchmark/benchmark.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dmim/gof.hpp"
#include "dmim/measures.hpp"
#include "dmim/montecarlo.hpp"

namespace {

void BM_integrate_normal_measure(benchmark::State& state) {
    const double sigma = 1.0;
    auto integrand = [sigma](double x) {
        const double z = x / sigma;
        const double f = std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi));
        return f * std::exp(-f);
    };
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            dmim::quad::integrate(integrand, dmim::quad::Interval::whole_line()).value);
    }
}
BENCHMARK(BM_integrate_normal_measure);

void BM_normal_series(benchmark::State& state) {
    const double sigma = std::pow(10.0, state.range(0) / 10.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(dmim::dmim_normal_series(sigma).value);
    }
}
BENCHMARK(BM_normal_series)->Arg(-10)->Arg(0)->Arg(10);

void BM_sample_normal(benchmark::State& state) {
    const auto spec = dmim::DistributionSpec::normal(0.0, 1.0);
    const std::int64_t n = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(dmim::mc::sample(spec, n, 42));
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_sample_normal)->Arg(1000)->Arg(100000);

void BM_ks_statistic(benchmark::State& state) {
    const auto spec = dmim::DistributionSpec::normal(0.0, 1.0);
    auto samples = dmim::mc::sample(spec, state.range(0), 7);
    std::sort(samples.begin(), samples.end());
    auto cdf = [](double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); };
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            dmim::gof::ks_statistic_sorted(std::span<const double>(samples), cdf));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ks_statistic)->Arg(1000)->Arg(100000);

void BM_exceedance_cell(benchmark::State& state) {
    dmim::mc::SimConfig config{dmim::DistributionSpec::normal(0.0, 1.0),
                               {0.02},
                               0.01,
                               std::nullopt,
                               static_cast<int>(state.range(0)),
                               1,
                               dmim::mc::NRule::DistributionFree,
                               0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(dmim::mc::estimate_exceedance(config));
    }
}
BENCHMARK(BM_exceedance_cell)->Arg(50)->Arg(500)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
