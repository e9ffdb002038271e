#include <benchmark/benchmark.h>

#include <vector>

#include "greenassoc/analysis.hpp"
#include "greenassoc/battery_chain.hpp"
#include "greenassoc/fixed_point.hpp"
#include "greenassoc/simulator.hpp"

using namespace greenassoc;

namespace {

void BM_CompoundPoisson(benchmark::State& state) {
  const std::vector<double> atoms(static_cast<std::size_t>(state.range(0)), 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(compound_poisson_pmf_scaled(atoms, 1000));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CompoundPoisson)->RangeMultiplier(4)->Range(4, 256)->Complexity();

void BM_Landscape(benchmark::State& state) {
  const NetworkConfig c = NetworkConfig::defaults();
  const BatteryVectors v = BatteryVectors::uniform(c);
  const Scheme s = Scheme::adaptive(2.0, 1.0);
  for (auto _ : state) {
    const Landscape land(c, s, v);
    benchmark::DoNotOptimize(land.outage_probability());
  }
}
BENCHMARK(BM_Landscape)->Unit(benchmark::kMillisecond);

void BM_Demand(benchmark::State& state) {
  const NetworkConfig c = NetworkConfig::defaults();
  const Landscape land(c, Scheme::adaptive(2.0, 1.0), BatteryVectors::uniform(c));
  for (auto _ : state) benchmark::DoNotOptimize(land.demand(BsType::HY));
}
BENCHMARK(BM_Demand)->Unit(benchmark::kMillisecond);

void BM_Solve(benchmark::State& state) {
  const NetworkConfig c = NetworkConfig::defaults();
  for (auto _ : state) benchmark::DoNotOptimize(solve(c, Scheme::adaptive(2.0, 1.0)));
}
BENCHMARK(BM_Solve)->Unit(benchmark::kMillisecond)->Iterations(3);

void BM_SlotSimulation(benchmark::State& state) {
  const NetworkConfig c = NetworkConfig::defaults();
  const SlotSimulator sim(c, Scheme::adaptive(2.0, 1.0));
  SimRng rng(1);
  Realization r = sample_realization(c, rng);
  long users = 0;
  for (auto _ : state) users += sim.run_slot(r, rng).users;
  state.counters["users/s"] = benchmark::Counter(static_cast<double>(users), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_SlotSimulation)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
