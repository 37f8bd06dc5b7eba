#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "newsaudit/corpus.hpp"
#include "newsaudit/errors.hpp"
#include "newsaudit/eval/agreement.hpp"
#include "newsaudit/eval/metrics.hpp"
#include "support/tmpdir.hpp"

using namespace newsaudit;
using namespace newsaudit::eval;

namespace {

Article art(const std::string& id, Label label, Source source) {
  Article a;
  a.id = id;
  a.title = "t";
  a.text = "body";
  a.label = label;
  a.source = source;
  return a;
}

// 8 articles: 2 per subgroup.
Corpus eight_article_corpus() {
  Corpus c;
  c.name = "eval8";
  c.articles = {
      art("hr1", Label::real, Source::human),   art("hr2", Label::real, Source::human),
      art("hf1", Label::fake, Source::human),   art("hf2", Label::fake, Source::human),
      art("mf1", Label::fake, Source::machine), art("mf2", Label::fake, Source::machine),
      art("mr1", Label::real, Source::machine), art("mr2", Label::real, Source::machine),
  };
  return c;
}

Prediction pred(const std::string& id, double score) {
  Prediction p;
  p.article_id = id;
  p.score = score;
  return p;
}

double brute_force_auroc(const std::vector<double>& scores, const std::vector<int>& labels) {
  double wins = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] != 1) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (labels[j] != 0) continue;
      ++pairs;
      if (scores[i] > scores[j])
        wins += 1.0;
      else if (scores[i] == scores[j])
        wins += 0.5;
    }
  }
  return wins / static_cast<double>(pairs);
}

}  // namespace

TEST_CASE("evaluate computes subgroup and aggregate metrics on a hand fixture") {
  Corpus c = eight_article_corpus();
  // hr1 correct, hr2 wrong; hf1/hf2 correct; mf1 correct, mf2 wrong; mr1/mr2 correct.
  std::vector<Prediction> preds = {
      pred("hr1", 0.2), pred("hr2", 0.9),  // HR accuracy 1/2
      pred("hf1", 0.8), pred("hf2", 0.7),  // HF accuracy 2/2
      pred("mf1", 0.6), pred("mf2", 0.1),  // MF accuracy 1/2
      pred("mr1", 0.3), pred("mr2", 0.4),  // MR accuracy 2/2
  };
  EvalReport r = evaluate(preds, c, 0.5);
  CHECK(r.per_subgroup_accuracy.at(Subgroup::HR) == doctest::Approx(0.5));
  CHECK(r.per_subgroup_accuracy.at(Subgroup::HF) == doctest::Approx(1.0));
  CHECK(r.per_subgroup_accuracy.at(Subgroup::MF) == doctest::Approx(0.5));
  CHECK(r.per_subgroup_accuracy.at(Subgroup::MR) == doctest::Approx(1.0));
  CHECK(r.overall_accuracy == doctest::Approx(0.75));  // 6 of 8
  // Count-weighted identity: overall equals total correct over total.
  double weighted = 0.0;
  std::size_t total = 0;
  for (const auto& [g, acc] : r.per_subgroup_accuracy) {
    weighted += acc * static_cast<double>(r.per_subgroup_counts.at(g));
    total += r.per_subgroup_counts.at(g);
  }
  CHECK(r.overall_accuracy == doctest::Approx(weighted / static_cast<double>(total)));
  // Fake as positive class: TP=3 (hf1,hf2,mf1), FP=1 (hr2), FN=1 (mf2).
  CHECK(r.precision == doctest::Approx(3.0 / 4.0));
  CHECK(r.recall == doctest::Approx(3.0 / 4.0));
  CHECK(r.f1 == doctest::Approx(0.75));
  CHECK(r.threshold == doctest::Approx(0.5));
}

TEST_CASE("explicit hard predictions override the threshold") {
  Corpus c = eight_article_corpus();
  std::vector<Prediction> preds;
  for (const auto& a : c.articles) {
    Prediction p = pred(a.id, 0.99);  // score says fake everywhere
    p.pred = (a.label == Label::fake) ? 1 : 0;  // but hard preds are perfect
    preds.push_back(p);
  }
  EvalReport r = evaluate(preds, c, 0.5);
  CHECK(r.overall_accuracy == doctest::Approx(1.0));
}

TEST_CASE("evaluate rejects id mismatches") {
  Corpus c = eight_article_corpus();
  SUBCASE("missing prediction") {
    std::vector<Prediction> preds;
    for (const auto& a : c.articles)
      if (a.id != "mf2") preds.push_back(pred(a.id, 0.5));
    try {
      (void)evaluate(preds, c, 0.5);
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("mf2") != std::string::npos);
    }
  }
  SUBCASE("unknown id") {
    std::vector<Prediction> preds;
    for (const auto& a : c.articles) preds.push_back(pred(a.id, 0.5));
    preds.push_back(pred("ghost", 0.5));
    try {
      (void)evaluate(preds, c, 0.5);
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("ghost") != std::string::npos);
    }
  }
  SUBCASE("duplicate prediction") {
    std::vector<Prediction> preds;
    for (const auto& a : c.articles) preds.push_back(pred(a.id, 0.5));
    preds.push_back(pred("hr1", 0.5));
    CHECK_THROWS_AS((void)evaluate(preds, c, 0.5), ValidationError);
  }
}

TEST_CASE("auroc equals brute-force pair counting exactly, ties included") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> lab(0, 1);
  std::uniform_int_distribution<int> quant(0, 9);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = 5 + static_cast<std::size_t>(trial % 20);
    std::vector<double> scores(n);
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
      scores[i] = quant(rng) / 10.0;  // coarse grid forces plenty of ties
      labels[i] = lab(rng);
    }
    labels[0] = 0;
    labels[1] = 1;
    CHECK(auroc(scores, labels) == brute_force_auroc(scores, labels));
  }
}

TEST_CASE("auroc known values") {
  CHECK(auroc({0.1, 0.2, 0.8, 0.9}, {0, 0, 1, 1}) == doctest::Approx(1.0));
  CHECK(auroc({0.9, 0.8, 0.2, 0.1}, {0, 0, 1, 1}) == doctest::Approx(0.0));
  CHECK(auroc({0.5, 0.5, 0.5, 0.5}, {0, 1, 0, 1}) == doctest::Approx(0.5));
}

TEST_CASE("auroc input validation") {
  CHECK_THROWS_AS((void)auroc({}, {}), ValidationError);
  CHECK_THROWS_AS((void)auroc({0.5}, {1}), ValidationError);           // one class
  CHECK_THROWS_AS((void)auroc({0.5, 0.4}, {1, 1}), ValidationError);   // one class
  CHECK_THROWS_AS((void)auroc({0.5, 0.4}, {1}), ValidationError);      // size mismatch
}

TEST_CASE("diff_reports subtracts exactly and render shows signed percents") {
  // Anchor: a detector improving from 77.97% to 84.46% reads as +6.49, and a
  // subgroup recovering from 24.24% to 90.70% reads as +66.46.
  EvalReport before, after;
  for (auto g : {Subgroup::HR, Subgroup::HF, Subgroup::MF}) {
    before.per_subgroup_counts[g] = 100;
    after.per_subgroup_counts[g] = 100;
    before.per_subgroup_accuracy[g] = 0.5;
    after.per_subgroup_accuracy[g] = 0.5;
  }
  before.per_subgroup_accuracy[Subgroup::HF] = 0.2424;
  after.per_subgroup_accuracy[Subgroup::HF] = 0.9070;
  before.overall_accuracy = 0.7797;
  after.overall_accuracy = 0.8446;
  before.auroc = 0.9;
  after.auroc = 0.85;
  DiffReport d = diff_reports(before, after);
  CHECK(d.overall_accuracy.difference == doctest::Approx(0.8446 - 0.7797).epsilon(1e-12));
  CHECK(d.per_subgroup_accuracy.at(Subgroup::HF).difference ==
        doctest::Approx(0.9070 - 0.2424).epsilon(1e-12));
  std::string text = render_diff(d);
  CHECK(text.find("+6.49") != std::string::npos);
  CHECK(text.find("+66.46") != std::string::npos);
  CHECK(text.find("improvement") != std::string::npos);
  CHECK(text.find("regression") != std::string::npos);  // auroc fell
  CHECK(text.find("accuracy[HF]") != std::string::npos);

  // JSON round trip.
  DiffReport back = diff_from_json(diff_to_json(d));
  CHECK(back.overall_accuracy.difference == d.overall_accuracy.difference);
  CHECK(back.per_subgroup_accuracy.at(Subgroup::HF).after ==
        d.per_subgroup_accuracy.at(Subgroup::HF).after);
}

TEST_CASE("diff_reports requires identical corpus shapes") {
  EvalReport a, b;
  a.per_subgroup_counts[Subgroup::HR] = 10;
  a.per_subgroup_accuracy[Subgroup::HR] = 1.0;
  b = a;
  SUBCASE("count mismatch") {
    b.per_subgroup_counts[Subgroup::HR] = 11;
    CHECK_THROWS_AS((void)diff_reports(a, b), ValidationError);
  }
  SUBCASE("subgroup set mismatch") {
    b.per_subgroup_counts[Subgroup::MR] = 5;
    b.per_subgroup_accuracy[Subgroup::MR] = 1.0;
    CHECK_THROWS_AS((void)diff_reports(a, b), ValidationError);
  }
}

TEST_CASE("report renders percentage tables with MR only when present") {
  Corpus c = eight_article_corpus();
  std::vector<Prediction> preds;
  for (const auto& a : c.articles) preds.push_back(pred(a.id, a.label == Label::fake ? 0.9 : 0.1));
  EvalReport r = evaluate(preds, c, 0.5);
  std::string text = render_report(r);
  CHECK(text.find("MR") != std::string::npos);
  CHECK(text.find("100.00") != std::string::npos);
  CHECK(text.find("n=2") != std::string::npos);

  Corpus no_mr;
  no_mr.name = "nomr";
  for (const auto& a : c.articles)
    if (a.subgroup() != Subgroup::MR) no_mr.articles.push_back(a);
  std::vector<Prediction> preds2;
  for (const auto& a : no_mr.articles)
    preds2.push_back(pred(a.id, a.label == Label::fake ? 0.9 : 0.1));
  EvalReport r2 = evaluate(preds2, no_mr, 0.5);
  CHECK_FALSE(r2.has_subgroup(Subgroup::MR));
  std::string text2 = render_report(r2);
  CHECK(text2.find("MR") == std::string::npos);
}

TEST_CASE("report json round trip keeps metrics and metadata") {
  Corpus c = eight_article_corpus();
  std::vector<Prediction> preds;
  for (const auto& a : c.articles) preds.push_back(pred(a.id, a.label == Label::fake ? 0.8 : 0.3));
  EvalReport r = evaluate(preds, c, 0.5);
  r.seed = 99;
  r.split = "test";
  EvalReport back = report_from_json(report_to_json(r));
  CHECK(back.overall_accuracy == r.overall_accuracy);
  CHECK(back.precision == r.precision);
  CHECK(back.recall == r.recall);
  CHECK(back.f1 == r.f1);
  CHECK(back.auroc == r.auroc);
  CHECK(back.threshold == r.threshold);
  CHECK(back.seed == 99);
  CHECK(back.split == "test");
  CHECK(back.per_subgroup_accuracy == r.per_subgroup_accuracy);
  CHECK(back.per_subgroup_counts == r.per_subgroup_counts);
}

TEST_CASE("predictions jsonl round trip and validation") {
  std::vector<Prediction> preds = {pred("a", 0.25), pred("b", 0.75)};
  preds[1].pred = 1;
  std::string jsonl = predictions_to_jsonl(preds);
  std::istringstream in(jsonl);
  auto back = parse_predictions(in);
  REQUIRE(back.size() == 2);
  CHECK(back[0].article_id == "a");
  CHECK(back[0].score == 0.25);
  CHECK_FALSE(back[0].pred.has_value());
  CHECK(back[1].pred == 1);

  SUBCASE("score out of range") {
    std::istringstream bad(R"({"id":"x","score":1.5})");
    CHECK_THROWS_AS((void)parse_predictions(bad), ValidationError);
  }
  SUBCASE("bad pred value") {
    std::istringstream bad(R"({"id":"x","score":0.5,"pred":2})");
    CHECK_THROWS_AS((void)parse_predictions(bad), ValidationError);
  }
  SUBCASE("file round trip") {
    testsupport::TempDir tmp("preds");
    save_predictions(tmp / "p.jsonl", preds);
    auto loaded = load_predictions(tmp / "p.jsonl");
    REQUIRE(loaded.size() == 2);
    CHECK(loaded[1].score == 0.75);
  }
}

// ---------------------------------------------------------------- kappa

TEST_CASE("cohens kappa hand fixture equals one half") {
  // p_o = 3/4; marginals give p_e = 1/2; kappa = (3/4 - 1/2)/(1 - 1/2) = 1/2.
  CHECK(cohens_kappa({0, 0, 1, 1}, {0, 0, 1, 0}) == doctest::Approx(0.5));
}

TEST_CASE("cohens kappa endpoints and conventions") {
  CHECK(cohens_kappa({1, 2, 3, 1}, {1, 2, 3, 1}) == doctest::Approx(1.0));
  // Both annotators constant on the same category: p_e = 1 convention -> 1.
  CHECK(cohens_kappa({4, 4, 4}, {4, 4, 4}) == doctest::Approx(1.0));
  // Chance-level agreement scores zero.
  CHECK(cohens_kappa({0, 0, 1, 1}, {0, 1, 0, 1}) == doctest::Approx(0.0));
  // Systematic disagreement goes negative.
  CHECK(cohens_kappa({0, 0, 1, 1}, {1, 1, 0, 0}) < 0.0);
}

TEST_CASE("cohens kappa input validation") {
  CHECK_THROWS_AS((void)cohens_kappa({}, {}), ValidationError);
  CHECK_THROWS_AS((void)cohens_kappa({1, 2}, {1}), ValidationError);
}

TEST_CASE("kappa interpretation scale") {
  CHECK(kappa_interpretation(0.05) == "slight");
  CHECK(kappa_interpretation(0.3) == "fair");
  CHECK(kappa_interpretation(0.5) == "moderate");
  CHECK(kappa_interpretation(0.7) == "substantial");
  CHECK(kappa_interpretation(0.9) == "almost perfect");
}

TEST_CASE("cosine consistency") {
  CHECK(cosine_consistency({1, 0}, {0, 1}) == doctest::Approx(0.0));
  CHECK(cosine_consistency({1, 2, 3}, {1, 2, 3}) == doctest::Approx(1.0));
  CHECK(cosine_consistency({1, 0}, {-1, 0}) == doctest::Approx(-1.0));
  CHECK_THROWS_AS((void)cosine_consistency({}, {}), ValidationError);
  CHECK_THROWS_AS((void)cosine_consistency({1.0}, {1.0, 2.0}), ValidationError);
  CHECK_THROWS_AS((void)cosine_consistency({0.0, 0.0}, {1.0, 1.0}), ValidationError);
}
