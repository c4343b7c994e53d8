// Microbenchmarks of the classical side: assignment enumeration and the
// Phase-I simplex feasibility solve.

#include <benchmark/benchmark.h>

#include "ksc/ncmodel.hpp"
#include "ksc/scenarios.hpp"

using namespace ksc;

static void kcbs_enumeration(benchmark::State& state) {
    const Scenario kcbs = kcbs_scenario();
    for (auto _ : state) {
        benchmark::DoNotOptimize(classical_bound(kcbs));
    }
}

static void pm_enumeration(benchmark::State& state) {
    const Scenario pm = peres_mermin_scenario();
    for (auto _ : state) {
        benchmark::DoNotOptimize(classical_bound(pm));
    }
}

static void kcbs_feasible_lp(benchmark::State& state) {
    const Scenario kcbs = kcbs_scenario();
    const Behavior mixed{std::vector<double>(5, -1.0 / 3.0)};
    for (auto _ : state) {
        benchmark::DoNotOptimize(noncontextual_feasible(kcbs, mixed, 1e-8));
    }
}

static void pm_infeasible_lp(benchmark::State& state) {
    const Scenario pm = peres_mermin_scenario();
    const Behavior ideal{{1.0, 1.0, 1.0, -1.0, -1.0, -1.0}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(noncontextual_feasible(pm, ideal, 1e-8));
    }
}

BENCHMARK(kcbs_enumeration);
BENCHMARK(pm_enumeration);
BENCHMARK(kcbs_feasible_lp);
BENCHMARK(pm_infeasible_lp);
BENCHMARK_MAIN();
