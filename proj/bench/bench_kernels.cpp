// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "gwtda/core.hpp"
#include "gwtda/harness.hpp"
#include "gwtda/transforms.hpp"
#include "gwtda/width.hpp"

using namespace gwtda;

namespace {

PointCloud blob(std::size_t n, std::size_t d) {
  GeneratorSpec spec;
  spec.kind = GeneratorKind::GaussianBlob;
  spec.n = n;
  spec.d = d;
  spec.seed = RngSeed{42};
  return generate(spec);
}

void BM_Distances_Serial(benchmark::State& state) {
  const auto cloud = blob(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(serial::pairwise_distances(cloud));
}

void BM_Distances_Omp(benchmark::State& state) {
  const auto cloud = blob(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(pairwise_distances(cloud));
}

void BM_ProjectSors_Serial(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(1));
  const auto cloud = blob(static_cast<std::size_t>(state.range(0)), d);
  const auto op = make_sors_op(d / 8, d, RngSeed{1});
  for (auto _ : state) benchmark::DoNotOptimize(serial::project_cloud(op, cloud));
}

void BM_ProjectSors_Omp(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(1));
  const auto cloud = blob(static_cast<std::size_t>(state.range(0)), d);
  const auto op = make_sors_op(d / 8, d, RngSeed{1});
  for (auto _ : state) benchmark::DoNotOptimize(project_cloud(op, cloud));
}

void BM_ProjectGaussian_Serial(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(1));
  const auto cloud = blob(static_cast<std::size_t>(state.range(0)), d);
  const auto op = make_gaussian_op(d / 8, d, RngSeed{1});
  for (auto _ : state) benchmark::DoNotOptimize(serial::project_cloud(op, cloud));
}

void BM_ProjectGaussian_Omp(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(1));
  const auto cloud = blob(static_cast<std::size_t>(state.range(0)), d);
  const auto op = make_gaussian_op(d / 8, d, RngSeed{1});
  for (auto _ : state) benchmark::DoNotOptimize(project_cloud(op, cloud));
}

void BM_WidthMc_Serial(benchmark::State& state) {
  const auto t = normalized_differences(blob(static_cast<std::size_t>(state.range(0)), 16));
  for (auto _ : state) benchmark::DoNotOptimize(serial::gaussian_width_mc(t, 1024, RngSeed{2}));
}

void BM_WidthMc_Omp(benchmark::State& state) {
  const auto t = normalized_differences(blob(static_cast<std::size_t>(state.range(0)), 16));
  for (auto _ : state) benchmark::DoNotOptimize(gaussian_width_mc(t, 1024, RngSeed{2}));
}

void BM_Doubling_Serial(benchmark::State& state) {
  const auto dist = pairwise_distances(blob(static_cast<std::size_t>(state.range(0)), 3));
  for (auto _ : state) benchmark::DoNotOptimize(serial::doubling_dimension(dist));
}

void BM_Doubling_Omp(benchmark::State& state) {
  const auto dist = pairwise_distances(blob(static_cast<std::size_t>(state.range(0)), 3));
  for (auto _ : state) benchmark::DoNotOptimize(doubling_dimension(dist));
}

}  // namespace

BENCHMARK(BM_Distances_Serial)->Args({256, 256})->Args({512, 4096})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Distances_Omp)->Args({256, 256})->Args({512, 4096})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProjectSors_Serial)->Args({256, 256})->Args({512, 4096})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProjectSors_Omp)->Args({256, 256})->Args({512, 4096})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProjectGaussian_Serial)->Args({256, 256})->Args({128, 4096})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProjectGaussian_Omp)->Args({256, 256})->Args({128, 4096})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WidthMc_Serial)->Arg(20)->Arg(60)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WidthMc_Omp)->Arg(20)->Arg(60)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Doubling_Serial)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Doubling_Omp)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
