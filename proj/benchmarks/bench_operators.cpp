#include <benchmark/benchmark.h>

#include "hydrostat/diagnostics.hpp"
#include "hydrostat/dynamics.hpp"
#include "hydrostat/initial.hpp"

using namespace hydrostat;

static void BM_Advect(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const GridSpec g = GridSpec::make(1.0, 1.0, 1.0, n, n, n / 2);
    const State s = random_state(g, 1);
    const FieldBoundary bc = FieldBoundary::temperature(0.5);
    for (auto _ : state) benchmark::DoNotOptimize(advect(s.T, bc, s.v, s.w));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(g.cells()));
}
BENCHMARK(BM_Advect)->Arg(16)->Arg(32)->Arg(64);

static void BM_ExplicitTendency(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const GridSpec g = GridSpec::make(1.0, 1.0, 1.0, n, n, n / 2);
    const State s = random_state(g, 1);
    PhysParams p;
    p.f = 1.0;
    const Boundaries b = Boundaries::homogeneous(p);
    for (auto _ : state) benchmark::DoNotOptimize(explicit_tendency(s, p, b));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(g.cells()));
}
BENCHMARK(BM_ExplicitTendency)->Arg(16)->Arg(32);

static void BM_Sample(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const GridSpec g = GridSpec::make(1.0, 1.0, 1.0, n, n, n / 2);
    const State s = random_state(g, 1);
    const PhysParams p;
    for (auto _ : state) benchmark::DoNotOptimize(sample(s, p));
}
BENCHMARK(BM_Sample)->Arg(16)->Arg(32);

BENCHMARK_MAIN();
