#include <benchmark/benchmark.h>

#include "hydrostat/initial.hpp"
#include "hydrostat/stepper.hpp"

using namespace hydrostat;

static void BM_Step(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const GridSpec g = GridSpec::make(1.0, 1.0, 1.0, n, n, n / 2);
    const State s0 = random_state(g, 1);
    PhysParams p;
    p.f = 1.0;
    p.alpha_T = 0.5;
    Stepper st(g, p, StepConfig{});
    for (auto _ : state) {
        State s = s0;
        benchmark::DoNotOptimize(st.step(s, nullptr, 1e-3));
    }
}
BENCHMARK(BM_Step)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
