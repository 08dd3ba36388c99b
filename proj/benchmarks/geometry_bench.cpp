#include <benchmark/benchmark.h>

#include "rhombi/geometry.hpp"

using namespace rhombi;

static void BM_ComputeSweptCells(benchmark::State& state) {
  const FaceDir from = *FaceDir::from_vector({1, 1, 0});
  const FaceDir to = *FaceDir::from_vector({1, 0, 1});
  for (auto _ : state) benchmark::DoNotOptimize(compute_swept_cells(from, to));
}
BENCHMARK(BM_ComputeSweptCells)->Unit(benchmark::kMillisecond);

static void BM_ClassifyGroundContact(benchmark::State& state) {
  std::vector<LatticePos> ps;
  for (int i = 0; i < state.range(0); ++i) ps.push_back({i, i % 2, 0});
  const auto c = Configuration::from_positions(ps);
  const Mat3 rot = rotation_from_axis_angle({1, 2, 3}, 37);
  for (auto _ : state) benchmark::DoNotOptimize(classify_ground_contact(c, rot));
}
BENCHMARK(BM_ClassifyGroundContact)->Arg(8)->Arg(64);

static void BM_StructureMesh(benchmark::State& state) {
  std::vector<LatticePos> ps;
  for (int i = 0; i < state.range(0); ++i) ps.push_back({i, i, 0});
  const auto c = Configuration::from_positions(ps);
  for (auto _ : state) benchmark::DoNotOptimize(structure_mesh(c));
}
BENCHMARK(BM_StructureMesh)->Arg(10)->Arg(100);
