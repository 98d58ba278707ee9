#include <benchmark/benchmark.h>

#include "edgeaware/bilateral.hpp"
#include "edgeaware/challenge.hpp"
#include "edgeaware/diffusion.hpp"
#include "edgeaware/meanshift.hpp"
#include "edgeaware/metrics.hpp"

using namespace edgeaware;

namespace {

const Image& challenge(int size) {
  static const Image small = generate_challenge({128, 128, 0, 6.0, 60.0}).image;
  static const Image large = generate_challenge({}).image;
  return size == 128 ? small : large;
}

void BM_GaussianBlur(benchmark::State& state) {
  const Image& image = challenge(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(diffusion::gaussian_blur(image, 0.5));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(image.size()));
}
BENCHMARK(BM_GaussianBlur)->Arg(128)->Arg(256)->Unit(benchmark::kMicrosecond);

void BM_WindowedBilateral(benchmark::State& state) {
  const Image& image = challenge(256);
  for (auto _ : state) benchmark::DoNotOptimize(diffusion::windowed_bilateral(image, 0.5, 55.0, 5));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(image.size()));
}
BENCHMARK(BM_WindowedBilateral)->Unit(benchmark::kMillisecond);

void BM_DiffuseStep(benchmark::State& state) {
  const Image& image = challenge(256);
  const auto field = diffusion::compute_conductivity(diffusion::gaussian_blur(image, 0.5), 0.002);
  for (auto _ : state) {
    benchmark::DoNotOptimize(diffusion::diffuse_step(image, field, 0.25, diffusion::Parity::causal));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(image.size()));
}
BENCHMARK(BM_DiffuseStep)->Unit(benchmark::kMicrosecond);

void BM_Diffuse(benchmark::State& state) {
  const Image& image = challenge(256);
  diffusion::DiffusionConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(diffusion::diffuse(image, config));
}
BENCHMARK(BM_Diffuse)->Unit(benchmark::kMillisecond);

void BM_GeodesicSearch(benchmark::State& state) {
  const Image& image = challenge(256);
  const double sigma_r = static_cast<double>(state.range(0));
  std::size_t expanded = 0;
  for (auto _ : state) {
    const auto map = bilateral::geodesic_distances_sigma(image, {128, 200}, sigma_r, 20,
                                                         bilateral::PathMetric::sum_path);
    expanded = map.expanded_count;
    benchmark::DoNotOptimize(map.cost.data());
  }
  state.counters["expanded"] = static_cast<double>(expanded);
}
BENCHMARK(BM_GeodesicSearch)->Arg(20)->Arg(55)->Arg(80)->Unit(benchmark::kMicrosecond);

void BM_BilateralStandard(benchmark::State& state) {
  const Image& image = challenge(128);
  bilateral::BilateralConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(bilateral::bilateral_standard(image, config));
}
BENCHMARK(BM_BilateralStandard)->Unit(benchmark::kMillisecond);

void BM_BilateralEdgeAware(benchmark::State& state) {
  const Image& image = challenge(128);
  bilateral::BilateralConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(bilateral::bilateral_edge_aware(image, config));
}
BENCHMARK(BM_BilateralEdgeAware)->Unit(benchmark::kMillisecond);

void BM_MeanShift(benchmark::State& state) {
  const Image& image = challenge(128);
  meanshift::MeanShiftConfig config;
  config.edge_aware = state.range(0) != 0;
  config.use_cache = state.range(1) != 0;
  double iterations = 0.0;
  for (auto _ : state) {
    const FilterReport report = meanshift::mean_shift_filter(image, config);
    iterations = report.mean_iterations.value_or(0.0);
  }
  state.counters["mean_iterations"] = iterations;
}
BENCHMARK(BM_MeanShift)
    ->ArgNames({"edge_aware", "cache"})
    ->Args({0, 0})
    ->Args({0, 1})
    ->Args({1, 0})
    ->Args({1, 1})
    ->Unit(benchmark::kMillisecond);

void BM_NovelColorFraction(benchmark::State& state) {
  const Image& image = challenge(256);
  const Image blurred = diffusion::gaussian_blur(image, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(metrics::novel_color_fraction(image, blurred, 25.0));
}
BENCHMARK(BM_NovelColorFraction)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
