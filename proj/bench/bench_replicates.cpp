// Serial reference kernel against the OpenMP kernel on the same compiled plans.
// Both must return the same counts; the benchmark aborts otherwise.

#include <benchmark/benchmark.h>

#include <cstdlib>
#include <cstdio>

#include "pcomb/kernels.hpp"
#include "pcomb/scenario.hpp"

namespace {

using namespace pcomb;

constexpr std::uint64_t kSeed = 20240601;

Scenario bench_scenario(int kind) {
    Scenario s;
    switch (kind) {
        case 0:
            s.kind = ScenarioKind::synthetic;
            s.shape = SyntheticShape::PL;
            break;
        case 1:
            s.kind = ScenarioKind::circular;
            s.points = 199;
            break;
        default:
            s.kind = ScenarioKind::geometric_noniid;
            s.side = Side::right;
            break;
    }
    return s;
}

sim::CompiledPlan bench_plan(const benchmark::State& state) {
    const Scenario s = bench_scenario(static_cast<int>(state.range(0)));
    const auto n = static_cast<std::size_t>(state.range(1));
    return sim::compile_plan(s, s.effective_alternative(), kMethods, n, 0.05, std::nullopt);
}

void check_agreement(const sim::CompiledPlan& plan, std::size_t reps, int threads) {
    if (sim::count_rejections_serial(plan, reps, kSeed) != sim::count_rejections_parallel(plan, reps, kSeed, threads)) {
        std::fprintf(stderr, "serial and parallel kernels disagree\n");
        std::abort();
    }
}

void BM_Serial(benchmark::State& state) {
    const auto plan = bench_plan(state);
    const auto reps = static_cast<std::size_t>(state.range(2));
    for (auto _ : state) benchmark::DoNotOptimize(sim::count_rejections_serial(plan, reps, kSeed));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * reps));
}

void BM_Parallel(benchmark::State& state) {
    const auto plan = bench_plan(state);
    const auto reps = static_cast<std::size_t>(state.range(2));
    const int threads = static_cast<int>(state.range(3));
    check_agreement(plan, 1000, threads);
    for (auto _ : state) benchmark::DoNotOptimize(sim::count_rejections_parallel(plan, reps, kSeed, threads));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * reps));
}

// Arguments: scenario (0 synthetic PL, 1 circular N=199, 2 non-i.i.d. geometric), n, replicates[, threads].
BENCHMARK(BM_Serial)->ArgsProduct({{0, 1, 2}, {10, 100}, {20000}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Parallel)->ArgsProduct({{0, 1, 2}, {10, 100}, {20000}, {1, 2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
