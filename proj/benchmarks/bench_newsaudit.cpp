// Microbenchmarks for the hot paths: feature extraction, the studentized
// range CDF quadrature, AUROC ranking, and k-means quantization.
#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "newsaudit/corpus.hpp"
#include "newsaudit/eval/metrics.hpp"
#include "newsaudit/mauve/kmeans.hpp"
#include "newsaudit/stats/distributions.hpp"
#include "newsaudit/textfeat/features.hpp"
#include "newsaudit/textfeat/lexicon.hpp"

namespace {

newsaudit::Article typical_article() {
  newsaudit::Article a;
  a.id = "bench";
  a.label = newsaudit::Label::real;
  a.source = newsaudit::Source::human;
  a.title = "Regional Council Approves Revised Budget After Lengthy Session";
  std::string text;
  for (int i = 0; i < 12; ++i) {
    text +=
        "Officials said the regional council approved the revised budget after "
        "a lengthy public session on Tuesday evening, and residents praised the "
        "added transparency while questioning the timeline for repairs. ";
    text +=
        "The committee will announce detailed schedules next month, according "
        "to a spokesperson familiar with the plan. ";
  }
  a.text = text;
  return a;
}

void BM_extract_features(benchmark::State& state) {
  const newsaudit::Article article = typical_article();
  const newsaudit::textfeat::LexiconSet& lex = newsaudit::textfeat::builtin_lexicons();
  for (auto _ : state) {
    newsaudit::textfeat::FeatureVector v =
        newsaudit::textfeat::extract_features(article, lex);
    benchmark::DoNotOptimize(v.values.data());
  }
}
BENCHMARK(BM_extract_features);

void BM_studentized_range_cdf(benchmark::State& state) {
  double q = 2.0;
  for (auto _ : state) {
    double c = newsaudit::stats::studentized_range_cdf(q, 3, 10.0);
    benchmark::DoNotOptimize(c);
    q = q < 6.0 ? q + 0.01 : 2.0;  // sweep the argument to defeat caching
  }
}
BENCHMARK(BM_studentized_range_cdf);

void BM_auroc(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> score(0.0, 1.0);
  std::vector<double> scores(n);
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    scores[i] = score(rng);
    labels[i] = (rng() & 1) ? 1 : 0;
  }
  labels[0] = 0;
  labels[n - 1] = 1;
  for (auto _ : state) {
    double a = newsaudit::eval::auroc(scores, labels);
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_auroc)->Arg(100)->Arg(1000)->Arg(10000);

void BM_kmeans(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(5);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<std::vector<double>> points(n, std::vector<double>(16));
  for (std::size_t i = 0; i < n; ++i)
    for (double& v : points[i]) v = noise(rng) + (i % 4) * 6.0;
  for (auto _ : state) {
    newsaudit::mauve::KMeansResult r =
        newsaudit::mauve::kmeans(points, 8, /*seed=*/3);
    benchmark::DoNotOptimize(r.inertia);
  }
}
BENCHMARK(BM_kmeans)->Arg(200)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
