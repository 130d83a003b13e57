#include <benchmark/benchmark.h>

#include "rigidity/bump.hpp"
#include "rigidity/chain_rule.hpp"
#include "rigidity/covering.hpp"
#include "rigidity/line_geometry.hpp"
#include "rigidity/point_set.hpp"
#include "rigidity/remez.hpp"
#include "rigidity/rng.hpp"

namespace {

using namespace rigidity;

PointSet centered_grid(int n, double s, double h) {
  Vec offset(n), corner(n);
  for (int i = 0; i < n; ++i) {
    offset[i] = h / 2;
    corner[i] = -s / 2;
  }
  return PointSet::implicit_grid(n, s, h, offset, corner);
}

void BM_CoveringImplicit(benchmark::State& state) {
  PointSet z = centered_grid(2, 0.2, 1e-9);
  GridSpec g{1e-6};
  for (auto _ : state) benchmark::DoNotOptimize(covering_number(z, g));
}
BENCHMARK(BM_CoveringImplicit);

void BM_CoveringExplicit(benchmark::State& state) {
  PointSet grid = centered_grid(2, 0.2, 0.002);
  PointSet z = PointSet::explicit_set(2, grid.materialize());
  GridSpec g{0.005};
  for (auto _ : state) benchmark::DoNotOptimize(covering_number(z, g));
}
BENCHMARK(BM_CoveringExplicit);

void BM_Expand(benchmark::State& state) {
  int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(expand(3, m));
}
BENCHMARK(BM_Expand)->Arg(3)->Arg(5)->Arg(6);

void BM_CrossingSweep(benchmark::State& state) {
  PointSet z = centered_grid(2, 0.2, 0.004);
  GridSpec g{0.008};
  Rng rng(11);
  Vec z0 = rng.sphere_direction(2);
  for (auto _ : state) {
    Vec target = rng.sphere_direction(2) * rng.uniform(0.0, 0.05);
    LineThroughPoint line{z0, (target - z0).normalized()};
    benchmark::DoNotOptimize(crossing_count(line, z, g));
  }
}
BENCHMARK(BM_CrossingSweep);

void BM_FindLine(benchmark::State& state) {
  PointSet z = centered_grid(2, 0.45, 0.006);
  GridSpec g{0.006};
  Rng rng(3);
  Vec z0 = rng.sphere_direction(2);
  for (auto _ : state) benchmark::DoNotOptimize(find_line(z0, z, g, 8, SearchBudget{}, 7));
}
BENCHMARK(BM_FindLine);

void BM_TriangleRemez(benchmark::State& state) {
  PointSet z = PointSet::explicit_set(2, {Vec{-0.5, 0.0}, Vec{0.0, 0.1}, Vec{0.5, 0.0}}, "", true);
  for (auto _ : state) benchmark::DoNotOptimize(remez_bounds(z, 1, 101, RemezDomain::cube));
}
BENCHMARK(BM_TriangleRemez);

void BM_BuildBump(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_bump(0.9, 6));
}
BENCHMARK(BM_BuildBump);

}  // namespace

BENCHMARK_MAIN();
