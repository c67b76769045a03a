#include <benchmark/benchmark.h>

#include "loca/config.hpp"
#include "loca/rng.hpp"
#include "loca/suite.hpp"
#include "loca/tabular_model.hpp"
#include "loca/value_iteration.hpp"

namespace {

// Random model with a few successors per (s, a), the shape a learned gridworld model has.
loca::TabularModel random_model(std::size_t states) {
  loca::TabularModel m(states, 4, loca::TabularModel::Init::OptimisticTerminal);
  loca::Rng rng(7);
  for (std::size_t s = 0; s < states; ++s)
    for (loca::Action a = 0; a < 4; ++a)
      for (int k = 0; k < 3; ++k) m.ema_update(s, a, rng.uniform(0, 1), rng.below(states + 2), 0.5);
  return m;
}

template <loca::Execution E>
void BM_BellmanSweep(benchmark::State& state) {
  const auto model = random_model(static_cast<std::size_t>(state.range(0)));
  std::vector<double> in(model.state_count(), 0.0), out(model.state_count());
  for (auto _ : state) {
    const double d = E == loca::Execution::Serial ? loca::bellman_sweep_serial(model, 0.97, in, out)
                                                  : loca::bellman_sweep_parallel(model, 0.97, in, out);
    benchmark::DoNotOptimize(d);
    std::swap(in, out);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BellmanSweep<loca::Execution::Serial>)->Arg(100)->Arg(1000)->Arg(10000);
BENCHMARK(BM_BellmanSweep<loca::Execution::Parallel>)->Arg(100)->Arg(1000)->Arg(10000);

template <loca::Execution E>
void BM_RunSuite(benchmark::State& state) {
  auto cfg = loca::parse_config(
      "[experiment]\nruns = 4\n[agent]\nname = sarsa_lambda\n"
      "[schedule]\nphase1_steps = 20000\nphase2_steps = 1000\nphase3_steps = 10000\n");
  for (auto _ : state) benchmark::DoNotOptimize(loca::run_suite(cfg, E));
}
BENCHMARK(BM_RunSuite<loca::Execution::Serial>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RunSuite<loca::Execution::Parallel>)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
