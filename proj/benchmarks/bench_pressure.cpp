#include <benchmark/benchmark.h>

#include "hydrostat/initial.hpp"
#include "hydrostat/pressure.hpp"

using namespace hydrostat;

static void BM_Project(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const GridSpec g = GridSpec::make(1.0, 1.0, 1.0, n, n, 4);
    Rng rng(3);
    VectorField v0(g);
    for (double& x : v0.u.values()) x = rng.symmetric();
    for (double& x : v0.v.values()) x = rng.symmetric();
    PressureProjector proj(g, 1e-10);
    for (auto _ : state) {
        VectorField v = v0;
        benchmark::DoNotOptimize(proj.project(v, 0.01));
    }
}
BENCHMARK(BM_Project)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
