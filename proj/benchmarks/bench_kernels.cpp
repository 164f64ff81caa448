#include <benchmark/benchmark.h>

#include "smoothwave/additive.hpp"
#include "smoothwave/expsum.hpp"
#include "smoothwave/fft.hpp"
#include "smoothwave/saddle.hpp"
#include "smoothwave/smooth_core.hpp"

using namespace smoothwave;

static void BM_SieveSmooth(benchmark::State& state) {
    const uint64_t x = state.range(0);
    for (auto _ : state) {
        SmoothSet set = sieve_smooth(x, 1000);
        benchmark::DoNotOptimize(set.psi);
    }
    state.SetComplexityN(static_cast<int64_t>(x));
}
BENCHMARK(BM_SieveSmooth)->RangeMultiplier(4)->Range(1 << 12, 1 << 20)->Complexity();

static void BM_ExpSumGrid(benchmark::State& state) {
    const uint64_t n = state.range(0);
    SmoothSet set = sieve_smooth(n / 2, 100);
    for (auto _ : state) {
        ExpSumGrid grid = exp_sum_grid(set, n);
        benchmark::DoNotOptimize(grid.values[1]);
    }
    state.SetComplexityN(static_cast<int64_t>(n));
}
BENCHMARK(BM_ExpSumGrid)->RangeMultiplier(4)->Range(1 << 12, 1 << 20)->Complexity();

static void BM_SolveAlpha(benchmark::State& state) {
    const uint64_t y = state.range(0);
    double x = 1e6;
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_alpha(x, y, 1e-12).alpha);
        x += 1.0;  // defeat caching across iterations
    }
}
BENCHMARK(BM_SolveAlpha)->Arg(100)->Arg(1000)->Arg(10000);

static void BM_AbcConvolution(benchmark::State& state) {
    const uint64_t x = state.range(0);
    SmoothSet set = sieve_smooth(x, 316);
    for (auto _ : state) {
        AbcCount c = abc_count(set, CountMethod::Convolution);
        benchmark::DoNotOptimize(c.exact);
    }
    state.SetComplexityN(static_cast<int64_t>(x));
}
BENCHMARK(BM_AbcConvolution)->RangeMultiplier(4)->Range(1 << 10, 1 << 17)->Complexity();

static void BM_DickmanTable(benchmark::State& state) {
    for (auto _ : state) {
        DickmanTable t = build_dickman_table();
        benchmark::DoNotOptimize(t.values.back());
    }
}
BENCHMARK(BM_DickmanTable);

BENCHMARK_MAIN();
