#include <benchmark/benchmark.h>

#include <array>
#include <memory>

#include "hotspots/fem.hpp"
#include "hotspots/geometry.hpp"
#include "hotspots/mesh.hpp"

namespace {

namespace g = hotspots::geometry;
namespace m = hotspots::mesh;
namespace fem = hotspots::fem;

m::Mesh disk_mesh(double h) {
  m::MeshOptions o;
  o.h = h;
  return m::triangulate(g::make_example("disk_dirichlet"), o);
}

void BM_TriangulateDisk(benchmark::State& state) {
  const double h = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(disk_mesh(h));
}
BENCHMARK(BM_TriangulateDisk)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

// Graded mesh around a tiny Dirichlet disk.
void BM_TriangulateGraded(benchmark::State& state) {
  const std::array<double, 4> p{1.0, 0.00365616, 0.5, 0.5};
  const auto spec = g::make_example("square_disk", p);
  m::MeshOptions o;
  o.h = 0.05;
  for (auto _ : state) benchmark::DoNotOptimize(m::triangulate(spec, o));
}
BENCHMARK(BM_TriangulateGraded)->Unit(benchmark::kMillisecond);

void BM_Refine(benchmark::State& state) {
  const auto base = disk_mesh(0.05);
  for (auto _ : state) benchmark::DoNotOptimize(m::refine(base));
}
BENCHMARK(BM_Refine)->Unit(benchmark::kMillisecond);

void BM_Assemble(benchmark::State& state) {
  const auto mesh = m::refine(disk_mesh(0.05));
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fem::assemble(mesh, threads));
  state.counters["vertices"] = static_cast<double>(mesh.vertices.size());
}
BENCHMARK(BM_Assemble)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_SolveLowest(benchmark::State& state) {
  auto mesh = std::make_shared<const m::Mesh>(disk_mesh(1.0 / static_cast<double>(state.range(0))));
  const auto sys = fem::assemble(*mesh);
  fem::SolveOptions so;
  so.count = 3;
  for (auto _ : state) benchmark::DoNotOptimize(fem::solve_lowest(sys, mesh, so));
  state.counters["vertices"] = static_cast<double>(mesh->vertices.size());
}
BENCHMARK(BM_SolveLowest)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
