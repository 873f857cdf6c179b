#include <benchmark/benchmark.h>

#include <random>

#include "solclust/clearsky.hpp"
#include "solclust/cluster.hpp"
#include "solclust/distance.hpp"
#include "solclust/quality.hpp"

using namespace solclust;

namespace {

std::vector<double> series(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

std::vector<ProfileVector> profiles(std::size_t count, std::size_t points) {
  std::mt19937_64 rng(1);
  const Date first{std::chrono::year{2017}, std::chrono::January, std::chrono::day{1}};
  std::vector<ProfileVector> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back({add_days(first, static_cast<int>(i)), series(rng, points), "bench"});
  return out;
}

void BM_Dtw(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto a = series(rng, state.range(0)), b = series(rng, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dtw(a, b));
}
BENCHMARK(BM_Dtw)->Arg(80)->Arg(240)->Arg(1440);

void BM_PairwiseDtw(benchmark::State& state) {
  const auto p = profiles(state.range(0), 80);
  for (auto _ : state) benchmark::DoNotOptimize(pairwise_matrix(p, Metric::dtw));
}
BENCHMARK(BM_PairwiseDtw)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_PairwiseEuclidean(benchmark::State& state) {
  const auto p = profiles(state.range(0), 1440);
  for (auto _ : state) benchmark::DoNotOptimize(pairwise_matrix(p, Metric::euclidean));
}
BENCHMARK(BM_PairwiseEuclidean)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_KMeans(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const auto pts = FeatureMatrix::column(series(rng, state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kmeans(pts, 3));
}
BENCHMARK(BM_KMeans)->Arg(500)->Arg(1500);

void BM_Pam(benchmark::State& state) {
  const auto d = pairwise_matrix(profiles(state.range(0), 80), Metric::euclidean);
  for (auto _ : state) benchmark::DoNotOptimize(kmedoids(d, 3));
}
BENCHMARK(BM_Pam)->Arg(200)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_Silhouette(benchmark::State& state) {
  const auto d = pairwise_matrix(profiles(state.range(0), 80), Metric::euclidean);
  const auto labels = kmedoids(d, 3).labels;
  for (auto _ : state) benchmark::DoNotOptimize(silhouette(labels, d));
}
BENCHMARK(BM_Silhouette)->Arg(500);

void BM_ClearSkyDay(benchmark::State& state) {
  SiteConfig site;
  site.latitude = 39.74;
  site.longitude = -105.18;
  site.elevation = 1828.8;
  site.utc_offset = -7;
  const Date d{std::chrono::year{2017}, std::chrono::June, std::chrono::day{21}};
  for (auto _ : state) benchmark::DoNotOptimize(clearsky_day(d, site, TurbidityTable{}));
}
BENCHMARK(BM_ClearSkyDay);

}  // namespace
BENCHMARK_MAIN();
