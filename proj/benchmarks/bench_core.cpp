#include "polysum/fixtures.hpp"
#include "polysum/generator.hpp"
#include "polysum/oracle.hpp"
#include "polysum/twosum.hpp"

#include <benchmark/benchmark.h>

using namespace polysum;

static void BM_Rref(benchmark::State& state) {
    SplitMix64 rng(1);
    std::size_t n = static_cast<std::size_t>(state.range(0));
    Matrix m(n, n + 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n + 2; ++j) m.at(i, j) = Rational(rng.range(-5, 5));
    for (auto _ : state) {
        auto rr = rref(m);
        benchmark::DoNotOptimize(rr.rank);
    }
}
BENCHMARK(BM_Rref)->Arg(4)->Arg(8)->Arg(12);

static void BM_EnumerateCube(benchmark::State& state) {
    System cube = fixtures::fix_cube(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto verts = enumerate_vertices(cube);
        benchmark::DoNotOptimize(verts.size());
    }
}
BENCHMARK(BM_EnumerateCube)->Arg(3)->Arg(5)->Arg(7);

static void BM_PyramidDiameter(benchmark::State& state) {
    System pyr = fixtures::fix_pyramid(8);
    for (auto _ : state) {
        auto d = diameter(pyr);
        benchmark::DoNotOptimize(d.value);
    }
}
BENCHMARK(BM_PyramidDiameter);

static void BM_OracleDiameter(benchmark::State& state) {
    System pyr = fixtures::fix_pyramid(8);
    for (auto _ : state) {
        auto d = oracle::diameter(pyr);
        benchmark::DoNotOptimize(d.value);
    }
}
BENCHMARK(BM_OracleDiameter);

static void BM_TwoSumCtx(benchmark::State& state) {
    GenConfig cfg;
    cfg.seed = 5;
    TwoSum inst = *generate(cfg).two_sum;
    for (auto _ : state) {
        TwoSumCtx ctx(inst);
        benchmark::DoNotOptimize(ctx.graph.verts.size());
    }
}
BENCHMARK(BM_TwoSumCtx);

static void BM_ConnectAllPairs(benchmark::State& state) {
    GenConfig cfg;
    cfg.seed = 5;
    TwoSum inst = *generate(cfg).two_sum;
    TwoSumCtx ctx(inst);
    for (auto _ : state) {
        std::size_t total = 0;
        for (std::size_t i = 0; i < ctx.graph.verts.size(); ++i)
            for (std::size_t j = i + 1; j < ctx.graph.verts.size(); ++j)
                total += connect(ctx, ctx.graph.verts[i], ctx.graph.verts[j]).length();
        benchmark::DoNotOptimize(total);
    }
}
BENCHMARK(BM_ConnectAllPairs);

BENCHMARK_MAIN();
