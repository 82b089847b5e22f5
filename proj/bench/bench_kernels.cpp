// Parallel kernels against their serial reference twins. Thread count for
// the parallel variants comes from OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "raop/heuristics.hpp"
#include "raop/instance_gen.hpp"
#include "raop/sacp.hpp"
#include "raop/taop.hpp"

using namespace raop;

namespace {

Instance make(std::size_t n, std::size_t m) {
  GeneratorConfig g;
  g.n = n;
  g.m = m;
  g.epsilon = 0.5;
  g.alpha_target = 0.1;
  g.seed = 7;
  return gen_lcmnl(g);
}

void enum_parallel(benchmark::State& state) {
  const auto inst = make(static_cast<std::size_t>(state.range(0)), 5);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_taop(inst).revenue);
}

void enum_serial(benchmark::State& state) {
  const auto inst = make(static_cast<std::size_t>(state.range(0)), 5);
  for (auto _ : state) benchmark::DoNotOptimize(reference::enumerate_taop(inst).revenue);
}

void grid_parallel(benchmark::State& state) {
  const auto inst = make(3, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(grid_oracle_raop(inst, 101).revenue);
}

void grid_serial(benchmark::State& state) {
  const auto inst = make(3, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reference::grid_oracle_raop(inst, 101).revenue);
}

template <SolveResult (*Fast)(const Instance&, const HeuristicOptions&),
          SolveResult (*Slow)(const Instance&, const LineSearchOptions&)>
void heuristic(benchmark::State& state) {
  const auto inst = make(static_cast<std::size_t>(state.range(0)), 10);
  const bool parallel = state.range(1) != 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(parallel ? Fast(inst, {}).revenue : Slow(inst, {}).revenue);
  }
}

void sacp(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<DomainSpec> specs(n, make_finite_set({0.0, 0.3, 0.6, 1.0}));
  const auto inst = make(n, 5).with_domain(RefinementDomain(specs));
  const auto schedule = SACPSchedule::from_domain(inst.domain());
  const int threads = state.range(1) != 0 ? 0 : 1;
  for (auto _ : state) benchmark::DoNotOptimize(solve_sacp(inst, schedule, threads).result.revenue);
}

}  // namespace

BENCHMARK(enum_parallel)->Arg(14)->Arg(18)->Unit(benchmark::kMillisecond);
BENCHMARK(enum_serial)->Arg(14)->Arg(18)->Unit(benchmark::kMillisecond);
BENCHMARK(grid_parallel)->Arg(2)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(grid_serial)->Arg(2)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(heuristic<ro1, reference::ro1>)->Name("ro1")->ArgsProduct({{20, 50}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(heuristic<ro2, reference::ro2>)->Name("ro2")->ArgsProduct({{20, 50}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(heuristic<ro3, reference::ro3>)->Name("ro3")->ArgsProduct({{20}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(sacp)->ArgsProduct({{8, 10}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
