#include <benchmark/benchmark.h>

#include "rankprob/linalg.hpp"
#include "rankprob/mc.hpp"

using namespace rankprob;

static void LuSolve(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    rng::RngState r(1, 0);
    linalg::Matrix a = linalg::sample_gaussian_matrix(n, r);
    linalg::Matrix b = linalg::sample_gaussian_matrix(n, r);
    for (auto _ : state) {
        auto ls = linalg::solve_linear(a, b);
        benchmark::DoNotOptimize(ls.x);
    }
    state.SetComplexityN(n);
}
BENCHMARK(LuSolve)->RangeMultiplier(2)->Range(8, 128)->Complexity();

static void SchurEigenvaluesOnly(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    rng::RngState r(2, 0);
    linalg::Matrix a = linalg::sample_gaussian_matrix(n, r);
    for (auto _ : state) {
        auto ec = linalg::real_schur_eigen(a, 1e-10);
        benchmark::DoNotOptimize(ec.real_count);
    }
    state.SetComplexityN(n);
}
BENCHMARK(SchurEigenvaluesOnly)->RangeMultiplier(2)->Range(8, 128)->Complexity();

static void SchurWithVectors(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    rng::RngState r(3, 0);
    linalg::Matrix a = linalg::sample_gaussian_matrix(n, r);
    for (auto _ : state) {
        auto sd = linalg::real_schur(a, true);
        benchmark::DoNotOptimize(sd.t);
    }
}
BENCHMARK(SchurWithVectors)->Arg(16)->Arg(64);

static void PencilTrial(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::uint64_t stream = 0;
    for (auto _ : state) {
        rng::RngState r(4, stream++);
        linalg::Matrix t1 = linalg::sample_gaussian_matrix(n, r);
        linalg::Matrix t2 = linalg::sample_gaussian_matrix(n, r);
        auto ec = linalg::real_generalized_eigencount(t1, t2, 1e-10);
        benchmark::DoNotOptimize(ec.real_count);
    }
}
BENCHMARK(PencilTrial)->Arg(4)->Arg(8)->Arg(32)->Arg(100);

static void TrialBatch(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::uint64_t seed = 5;
    for (auto _ : state) {
        auto dist = mc::run_trials(n, 200, seed++, 1e-10);
        benchmark::DoNotOptimize(dist.counts);
    }
}
BENCHMARK(TrialBatch)->Arg(4)->Arg(8);

BENCHMARK_MAIN();
