#include <benchmark/benchmark.h>

#include "rankprob/prob.hpp"

using namespace rankprob;

static void ExactDirect(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto p = prob::p_rank_direct(n);
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(ExactDirect)->Arg(8)->Arg(13)->Arg(40)->Arg(100);

static void ExactGenFunc(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto p = prob::p_rank_genfunc(n);
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(ExactGenFunc)->Arg(8)->Arg(13)->Arg(40);

static void ExactRecursive(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto p = prob::p_rank_recursive(n);
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(ExactRecursive)->Arg(13)->Arg(40);

static void DecimalRendering(benchmark::State& state) {
    const auto p = prob::p_rank_direct(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto s = p.to_decimal(30);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(DecimalRendering)->Arg(12)->Arg(40);

static void FullTable(benchmark::State& state) {
    for (auto _ : state) {
        auto rows = prob::probability_table(13, 12);
        benchmark::DoNotOptimize(rows);
    }
}
BENCHMARK(FullTable);

BENCHMARK_MAIN();
