#include <benchmark/benchmark.h>

#include "rhombi/planner.hpp"

using namespace rhombi;

namespace {

Configuration line(int n) {
  std::vector<LatticePos> ps;
  for (int i = 0; i < n; ++i) ps.push_back({i, i, 0});
  return Configuration::from_positions(ps);
}

Configuration zigzag(int n) {
  std::vector<LatticePos> ps;
  for (int i = 0; i < n; ++i) ps.push_back({i, 0, i % 2});
  return Configuration::from_positions(ps);
}

}  // namespace

static void BM_Heuristic(benchmark::State& state) {
  const auto a = line(static_cast<int>(state.range(0)));
  const auto b = zigzag(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(heuristic(a, b));
}
BENCHMARK(BM_Heuristic)->Arg(4)->Arg(8);

static void BM_LegalMoves(benchmark::State& state) {
  const auto c = zigzag(static_cast<int>(state.range(0)));
  benchmark::DoNotOptimize(legal_moves(c));  // builds the blocker table
  for (auto _ : state) benchmark::DoNotOptimize(legal_moves(c));
}
BENCHMARK(BM_LegalMoves)->Arg(4)->Arg(16);

static void BM_Plan(benchmark::State& state) {
  const auto a = line(static_cast<int>(state.range(0)));
  const auto b = zigzag(static_cast<int>(state.range(0)));
  PlannerOptions opts;
  opts.algorithm = state.range(1) ? SearchAlgorithm::AStar : SearchAlgorithm::BFS;
  for (auto _ : state) benchmark::DoNotOptimize(plan(a, b, opts));
}
BENCHMARK(BM_Plan)->Args({4, 0})->Args({4, 1})->Args({5, 1})->Unit(benchmark::kMillisecond);
