#include <benchmark/benchmark.h>

#include "fbq/equilibrium.hpp"
#include "fbq/sim.hpp"
#include "fbq/sojourn.hpp"
#include "fbq/solver.hpp"

namespace {

const fbq::ModelParams kParams{0.4, 0.7, 0.2, 0.05, 1.0, 2.0};

void BM_DenseSolve(benchmark::State& state) {
    fbq::ThresholdStrategy s(static_cast<double>(state.range(0)) + 0.5);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            fbq::discount_vector(kParams, s, fbq::CaseTag::N, fbq::SolveMethod::Dense));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DenseSolve)->Arg(5)->Arg(10)->Arg(20)->Arg(30)->Complexity();

void BM_LevelReductionSolve(benchmark::State& state) {
    fbq::ThresholdStrategy s(static_cast<double>(state.range(0)) + 0.5);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            fbq::discount_vector(kParams, s, fbq::CaseTag::N, fbq::SolveMethod::LevelReduction));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LevelReductionSolve)->Arg(5)->Arg(10)->Arg(20)->Arg(30)->Complexity();

void BM_EquilibriumSolve(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(fbq::find_equilibrium_n(kParams));
}
BENCHMARK(BM_EquilibriumSolve);

void BM_SojournCdfPoint(benchmark::State& state) {
    fbq::ModelParams pr{1.0, 2.0, 0.3, 0.0, 0.0, 1.0};
    fbq::ThresholdStrategy s(3.6);
    const double t[1] = {10.0};
    for (auto _ : state) benchmark::DoNotOptimize(fbq::sojourn_cdf(pr, s, 4, t));
}
BENCHMARK(BM_SojournCdfPoint);

void BM_SimulateTagged(benchmark::State& state) {
    fbq::SimConfig cfg{kParams, 2.37, fbq::CaseTag::N,
                       static_cast<std::uint64_t>(state.range(0)), 1};
    for (auto _ : state) benchmark::DoNotOptimize(fbq::simulate_tagged(cfg, 2, 2));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateTagged)->Arg(10000);

} // namespace

BENCHMARK_MAIN();
