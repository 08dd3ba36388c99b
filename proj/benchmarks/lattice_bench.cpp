#include <benchmark/benchmark.h>

#include <random>

#include "rhombi/lattice.hpp"

using namespace rhombi;

static std::vector<LatticePos> random_sites(std::size_t n) {
  std::mt19937 rng(1);
  std::uniform_int_distribution<int> c(-100, 100);
  std::vector<LatticePos> out;
  while (out.size() < n) {
    LatticePos p{c(rng), c(rng), c(rng)};
    if (is_valid(p)) out.push_back(p);
  }
  return out;
}

static void BM_LatticeDistance(benchmark::State& state) {
  const auto sites = random_sites(1024);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lattice_distance(sites[i & 1023], sites[(i * 7 + 3) & 1023]));
    ++i;
  }
}
BENCHMARK(BM_LatticeDistance);

static void BM_IsConnected(benchmark::State& state) {
  std::vector<LatticePos> line;
  for (int i = 0; i < state.range(0); ++i) line.push_back({i, i, 0});
  for (auto _ : state) benchmark::DoNotOptimize(is_connected(line));
}
BENCHMARK(BM_IsConnected)->Arg(4)->Arg(16)->Arg(64);

static void BM_RotationCompose(benchmark::State& state) {
  const auto& all = Rotation::all();
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(all[i % 24] * all[(i * 5) % 24]);
    ++i;
  }
}
BENCHMARK(BM_RotationCompose);
