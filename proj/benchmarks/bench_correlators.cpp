// Microbenchmarks of the sequential-correlator engine and full inequality
// evaluations in both pictures.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "ksc/channels.hpp"
#include "ksc/measure.hpp"
#include "ksc/sampling.hpp"
#include "ksc/scenarios.hpp"

using namespace ksc;

static std::vector<Observable> gather(const Scenario& s, std::size_t context) {
    std::vector<Observable> obs;
    for (std::size_t idx : s.contexts[context]) obs.push_back(s.measurements[idx]);
    return obs;
}

static void pm_row_sequential(benchmark::State& state) {
    const Scenario pm = peres_mermin_scenario();
    const auto row = gather(pm, 0);
    std::mt19937_64 rng(1);
    const CMat rho = random_state(4, rng);
    const Channel noise = Channel::depolarizing(0.9, 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            sequential_correlator(rho, row, &noise, NoisePlacement::BeforeEach));
    }
}

static void pm_row_heisenberg(benchmark::State& state) {
    const Scenario pm = peres_mermin_scenario();
    const auto row = gather(pm, 0);
    std::mt19937_64 rng(1);
    const CMat rho = random_state(4, rng);
    const Channel noise = Channel::depolarizing(0.9, 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            sequential_correlator_heisenberg(rho, row, &noise, NoisePlacement::BeforeEach));
    }
}

static void kcbs_full_evaluation(benchmark::State& state) {
    const Scenario kcbs = kcbs_scenario();
    const CMat psi = kcbs_optimal_state();
    const Channel noise = Channel::depolarizing(0.7, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate_inequality(kcbs, psi, &noise,
                                                     NoisePlacement::BeforeFirstOnly,
                                                     Picture::Both));
    }
}

static void pm_full_evaluation(benchmark::State& state) {
    const Scenario pm = peres_mermin_scenario();
    const CMat rho = maximally_mixed(4);
    const Channel noise = Channel::depolarizing(0.7, 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            evaluate_inequality(pm, rho, &noise, NoisePlacement::BeforeEach, Picture::Both));
    }
}

BENCHMARK(pm_row_sequential);
BENCHMARK(pm_row_heisenberg);
BENCHMARK(kcbs_full_evaluation);
BENCHMARK(pm_full_evaluation);
BENCHMARK_MAIN();
