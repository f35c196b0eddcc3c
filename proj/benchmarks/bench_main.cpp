#include <benchmark/benchmark.h>

#include <random>

#include "linechase/adversaries.hpp"
#include "linechase/offline_opt.hpp"
#include "linechase/policies.hpp"
#include "linechase/verification.hpp"

using namespace linechase;

static void BM_DriftRun(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const Instance inst = random_instance(2, static_cast<std::size_t>(state.range(0)), rng, true);
  const DriftPolicy drift;
  for (auto _ : state) benchmark::DoNotOptimize(run_policy(drift, inst).cost);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DriftRun)->Arg(50)->Arg(1000);

static void BM_ExtendedDriftRun(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const Instance inst = random_instance(state.range(0), 1000, rng, true);
  const ExtendedDriftPolicy policy;
  for (auto _ : state) benchmark::DoNotOptimize(run_policy(policy, inst).cost);
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_ExtendedDriftRun)->Arg(3)->Arg(8);

static void BM_SolveOffline(benchmark::State& state) {
  std::mt19937_64 rng(11);
  const Instance inst = random_instance(2, static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(solve_offline(inst).path.cost);
}
BENCHMARK(BM_SolveOffline)->Arg(10)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_MinimizeOnLine(benchmark::State& state) {
  const Line line(Eigen::Vector2d(0.0, 0.0), Eigen::Vector2d(1.0, 0.0));
  const Point a = Eigen::Vector2d(0.0, 1.0);
  const Point b = Eigen::Vector2d(2.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(minimize_on_line(line, a, b));
}
BENCHMARK(BM_MinimizeOnLine);

static void BM_FuzzPotential(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(fuzz_potential(10000, 3).worst.slack);
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_FuzzPotential)->Unit(benchmark::kMillisecond);

static void BM_ArbitraryAdversary(benchmark::State& state) {
  const DriftPolicy drift;
  for (auto _ : state) benchmark::DoNotOptimize(arbitrary_lb_adversary(drift).ratio);
}
BENCHMARK(BM_ArbitraryAdversary)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
