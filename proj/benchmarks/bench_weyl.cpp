#include <benchmark/benchmark.h>

#include <cmath>

#include <weyl/weyl.hpp>

namespace {

using namespace weyl;

GridMask square_mask(benchmark::State& state) {
  return rasterize(DomainSpec::rectangle(1.0, 1.0), 1.0 / static_cast<double>(state.range(0)));
}

void BM_AssembleLaplacian(benchmark::State& state) {
  const auto mask = square_mask(state);
  for (auto _ : state) benchmark::DoNotOptimize(assemble_dirichlet_laplacian(mask));
  state.SetComplexityN(static_cast<int64_t>(mask.size()));
}
BENCHMARK(BM_AssembleLaplacian)->Arg(64)->Arg(128)->Arg(256)->Complexity();

void BM_AssembleBilaplacian(benchmark::State& state) {
  const auto mask = square_mask(state);
  for (auto _ : state) benchmark::DoNotOptimize(assemble_clamped_bilaplacian(mask));
  state.SetComplexityN(static_cast<int64_t>(mask.size()));
}
BENCHMARK(BM_AssembleBilaplacian)->Arg(64)->Arg(128)->Arg(256)->Complexity();

void BM_DistanceTransform(benchmark::State& state) {
  const auto mask = rasterize(DomainSpec::disk(1.0), 1.0 / static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(distance_to_complement(mask));
  state.SetComplexityN(static_cast<int64_t>(mask.size()));
}
BENCHMARK(BM_DistanceTransform)->Arg(64)->Arg(128)->Arg(256)->Complexity();

void BM_InertiaDense(benchmark::State& state) {
  const auto op = assemble_dirichlet_laplacian(square_mask(state));
  for (auto _ : state) benchmark::DoNotOptimize(inertia_count(op, 1000.5));
}
BENCHMARK(BM_InertiaDense)->Arg(16)->Arg(24)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_InertiaSparse(benchmark::State& state) {
  const auto op = assemble_dirichlet_laplacian(square_mask(state));
  SolverOptions options;
  options.dense_inertia_limit = 0;
  for (auto _ : state) benchmark::DoNotOptimize(inertia_count(op, 1000.5, options));
}
BENCHMARK(BM_InertiaSparse)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_LowestK(benchmark::State& state) {
  const auto op = assemble_dirichlet_laplacian(square_mask(state));
  for (auto _ : state) benchmark::DoNotOptimize(lowest_k(op, 20, 1e-8));
}
BENCHMARK(BM_LowestK)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_BucklingLowest(benchmark::State& state) {
  const auto pencil = assemble_buckling_pencil(square_mask(state));
  for (auto _ : state) benchmark::DoNotOptimize(generalized_spectrum(pencil, 4));
}
BENCHMARK(BM_BucklingLowest)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_DenseSpectrum(benchmark::State& state) {
  const auto op = assemble_dirichlet_laplacian(square_mask(state));
  for (auto _ : state) benchmark::DoNotOptimize(dense_spectrum(op));
}
BENCHMARK(BM_DenseSpectrum)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_HeatTrace(benchmark::State& state) {
  const auto spectrum = rectangle_spectrum(1.0, 1.0, static_cast<double>(state.range(0)));
  const auto times = log_spaced(1e-4, 1.0, 32);
  for (auto _ : state) benchmark::DoNotOptimize(heat_trace(spectrum, times, TailModel{2, 1.0}));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(spectrum.size() * times.size()));
}
BENCHMARK(BM_HeatTrace)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

void BM_CubeCover(benchmark::State& state) {
  const double eta = std::sqrt(2.0) / static_cast<double>(state.range(0));
  const auto disk = DomainSpec::disk(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(cube_cover(disk, eta));
}
BENCHMARK(BM_CubeCover)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
