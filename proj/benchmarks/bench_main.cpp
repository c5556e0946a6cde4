#include <benchmark/benchmark.h>

#include <numbers>

#include "giantatom/giantatom.hpp"

using namespace giantatom;

namespace {

SystemParams nested(double td) {
  SystemParams p;
  p.config = Configuration::Nested;
  p.theta0 = std::numbers::pi;
  p.delay = Delay::finite(td);
  return p;
}

void BM_Integrate(benchmark::State& state) {
  const SystemParams p = nested(0.5);
  const DelayKernel k = derive_kernel(layout_for(p.config));
  const int spd = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate(p, k, InitialState::plus(), 60.0, spd));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(120 * spd));
}
BENCHMARK(BM_Integrate)->Arg(50)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);

void BM_FinalValue(benchmark::State& state) {
  const SystemParams p = nested(0.8);
  const DelayKernel k = derive_kernel(layout_for(p.config));
  for (auto _ : state) {
    benchmark::DoNotOptimize(steady_state_numeric(k, p, InitialState::phase(1.1)));
  }
}
BENCHMARK(BM_FinalValue)->Unit(benchmark::kMicrosecond);

void BM_Oracle(benchmark::State& state) {
  const SystemParams p = nested(0.8);
  const ModeGrid grid{static_cast<int>(state.range(0)), 40.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle_integrate(p, layout_for(p.config), grid, InitialState::plus(), 1.0, 2e-3, 10));
  }
}
BENCHMARK(BM_Oracle)->Arg(1001)->Arg(4001)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
