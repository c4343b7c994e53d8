#include <benchmark/benchmark.h>

#include <random>

#include "ksc/linalg.hpp"
#include "ksc/sampling.hpp"

using namespace ksc;

static void matmul_4x4(benchmark::State& state) {
    std::mt19937_64 rng(1);
    const CMat a = random_hermitian(4, rng);
    const CMat b = random_hermitian(4, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(matmul(a, b));
    }
}

static void kron_2x2(benchmark::State& state) {
    const CMat y = sigma_y(), z = sigma_z();
    for (auto _ : state) {
        benchmark::DoNotOptimize(kron(y, z));
    }
}

static void jacobi_eigenvalues_4x4(benchmark::State& state) {
    std::mt19937_64 rng(2);
    const CMat rho = random_state(4, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(hermitian_eigenvalues(rho));
    }
}

BENCHMARK(matmul_4x4);
BENCHMARK(kron_2x2);
BENCHMARK(jacobi_eigenvalues_4x4);
BENCHMARK_MAIN();
