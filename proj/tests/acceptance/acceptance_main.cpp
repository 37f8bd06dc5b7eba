// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria 5, 6, and 10 drive the installed CLI binary end to end;
// the rest exercise the library directly against hand-computed fixtures and
// pre-build statistical oracles.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "newsaudit/corpus.hpp"
#include "newsaudit/eval/agreement.hpp"
#include "newsaudit/eval/metrics.hpp"
#include "newsaudit/mauve/mauve.hpp"
#include "newsaudit/models/logreg.hpp"
#include "newsaudit/stats/distributions.hpp"
#include "newsaudit/stats/tukey.hpp"
#include "newsaudit/textfeat/features.hpp"
#include "newsaudit/textfeat/lexicon.hpp"
#include "support/run_cli.hpp"
#include "support/synthetic.hpp"
#include "support/tmpdir.hpp"

#ifndef NEWSAUDIT_CLI_PATH
#error "NEWSAUDIT_CLI_PATH must point at the built newsaudit binary"
#endif

using namespace newsaudit;
using nlohmann::json;

namespace {

const std::string kCli = NEWSAUDIT_CLI_PATH;

struct CheckFailure {
  std::string detail;
};

void expect(bool ok, const std::string& detail) {
  if (!ok) throw CheckFailure{detail};
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  expect(in.good(), "missing file " + p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

double feature_by_name(const textfeat::FeatureVector& v, const std::string& name) {
  const auto& names = textfeat::FeatureSchema::instance().names();
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return v.values[i];
  throw CheckFailure{"unknown feature " + name};
}

// ---------------------------------------------------------------- criteria

// 1. SMOG and Coleman-Liau match hand-computed fixtures within 1e-2, fast.
void criterion_formulas() {
  auto start = std::chrono::steady_clock::now();
  const textfeat::LexiconSet& lex = textfeat::builtin_lexicons();

  Article cli_doc;
  cli_doc.id = "cli";
  cli_doc.label = Label::real;
  cli_doc.source = Source::human;
  cli_doc.text = "The cat sat. The dog ran.";
  textfeat::FeatureVector f1 = textfeat::extract_features(cli_doc, lex);
  double cli = feature_by_name(f1, "coleman_liau_index");
  expect(std::fabs(cli - (-8.03)) < 1e-2, "coleman_liau " + fmt(cli) + " != -8.03");

  Article smog_doc;
  smog_doc.id = "smog";
  smog_doc.label = Label::real;
  smog_doc.source = Source::human;
  std::string text;
  for (int i = 0; i < 15; ++i) text += "It was dangerous. ";
  for (int i = 0; i < 15; ++i) text += "It was fine. ";
  smog_doc.text = text;
  textfeat::FeatureVector f2 = textfeat::extract_features(smog_doc, lex);
  double smog = feature_by_name(f2, "smog_index");
  expect(std::fabs(smog - 7.169) < 1e-2, "smog " + fmt(smog) + " != 7.169");

  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  expect(secs < 1.0, "fixtures took " + fmt(secs) + "s (>= 1s)");
}

// 2. Tukey HSD p-values match the pre-build oracle; the studentized-range
//    CDF hits 0.95 at the tabulated (k=3, df=10) critical value.
void criterion_tukey() {
  struct Fixture {
    std::vector<std::vector<double>> groups;
    std::vector<double> expected;  // pairs (0,1), (0,2), (1,2)
  };
  std::vector<Fixture> fixtures = {
      {{{1.1, 2.3, 1.9, 2.8, 1.5}, {2.0, 3.1, 2.7, 3.5, 2.2}, {0.9, 1.4, 1.1, 1.8, 1.2}},
       {0.11183487789060687, 0.20982185829608402, 0.004613547988172595}},
      {{{5.1, 4.8, 5.5, 5.0},
        {5.9, 6.2, 6.8, 6.0, 6.4, 6.1},
        {5.3, 5.7, 5.5, 5.9, 5.1}},
       {0.0003327317146880615, 0.18358974183010668, 0.006148693816929951}},
      {{{0.50, 0.52, 0.48, 0.51, 0.49},
        {0.53, 0.55, 0.50, 0.54, 0.52},
        {0.51, 0.50, 0.52, 0.49, 0.53}},
       {0.05634321146278398, 0.6334707256547414, 0.2555763165068369}}};
  const Subgroup order[3] = {Subgroup::HR, Subgroup::HF, Subgroup::MF};
  for (std::size_t fi = 0; fi < fixtures.size(); ++fi) {
    stats::GroupSamples samples;
    for (int g = 0; g < 3; ++g) samples.groups[order[g]] = fixtures[fi].groups[g];
    std::vector<stats::TukeyComparison> got = stats::tukey_hsd(samples);
    expect(got.size() == 3, "fixture " + std::to_string(fi) + ": expected 3 pairs");
    for (int p = 0; p < 3; ++p) {
      double err = std::fabs(got[p].p_value - fixtures[fi].expected[p]);
      expect(err < 1e-3, "fixture " + std::to_string(fi) + " pair " + std::to_string(p) +
                             ": p " + fmt(got[p].p_value) + " vs oracle " +
                             fmt(fixtures[fi].expected[p]));
    }
  }
  double at_crit = stats::studentized_range_cdf(3.876776750013158, 3, 10.0);
  expect(std::fabs(at_crit - 0.95) < 1e-3,
         "cdf at the 5% critical value is " + fmt(at_crit) + ", not 0.95");
}

// 3. Analytic logistic-regression gradient vs central finite differences;
//    loss history non-increasing at the default learning rate.
void criterion_gradient() {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> feat(0.0, 1.0);
  std::uniform_real_distribution<double> wdist(-1.0, 1.0);
  double max_rel = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 5, m = 3;
    std::vector<std::vector<double>> x(n, std::vector<double>(m));
    std::vector<int> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) x[i][j] = feat(rng);
      y[i] = (rng() & 1) ? 1 : 0;
    }
    std::vector<double> w(m);
    for (double& wi : w) wi = wdist(rng);
    double b = wdist(rng);
    double l2 = (trial % 2) ? 0.01 : 0.0;

    std::vector<double> grad = models::logreg_gradient(x, y, w, b, l2);
    const double h = 1e-6;
    for (std::size_t j = 0; j <= m; ++j) {
      auto loss_at = [&](double delta) {
        std::vector<double> wj = w;
        double bj = b;
        if (j < m)
          wj[j] += delta;
        else
          bj += delta;
        return models::logreg_loss(x, y, wj, bj, l2);
      };
      double fd = (loss_at(h) - loss_at(-h)) / (2.0 * h);
      double rel = std::fabs(grad[j] - fd) / std::max(1.0, std::fabs(grad[j]));
      max_rel = std::max(max_rel, rel);
    }
  }
  expect(max_rel < 1e-5, "max gradient relative error " + fmt(max_rel));

  // Monotone loss on the bundled fixtures at the default rate.
  auto check_monotone = [](const models::TrainData& data) {
    models::FitConfig cfg;  // defaults
    models::LogRegModel model = models::fit_logreg(data, cfg);
    for (std::size_t i = 1; i < model.loss_history.size(); ++i)
      expect(model.loss_history[i] <= model.loss_history[i - 1] + 1e-12,
             "loss rose at epoch " + std::to_string(i));
  };
  models::TrainData grid;
  grid.feature_names = {"x"};
  for (double v : {-2.0, -1.5, -1.0, -0.5, 0.5, 1.0, 1.5, 2.0})
    grid.rows.push_back({v});
  grid.labels = {0, 0, 0, 1, 0, 1, 1, 1};
  check_monotone(grid);

  std::mt19937_64 rng2(7);
  models::TrainData wide;
  wide.feature_names = {"a", "b", "c"};
  std::normal_distribution<double> noise(0.0, 0.6);
  for (int i = 0; i < 60; ++i) {
    int label = i % 2;
    wide.rows.push_back({label + noise(rng2), noise(rng2), label - noise(rng2)});
    wide.labels.push_back(label);
  }
  check_monotone(wide);
}

// 4. AUROC agrees exactly with brute-force pair counting, ties included.
void criterion_auroc() {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 1000; ++trial) {
    std::uniform_int_distribution<std::size_t> ndist(2, 200);
    std::size_t n = ndist(rng);
    std::uniform_int_distribution<int> level(0, 9);
    std::vector<double> scores(n);
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
      scores[i] = level(rng) / 10.0;  // coarse grid forces plenty of ties
      labels[i] = (rng() & 1) ? 1 : 0;
    }
    labels[0] = 0;  // guarantee both classes
    labels[n - 1] = 1;

    double fast = eval::auroc(scores, labels);
    double pairs = 0.0, wins = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (labels[i] != 1) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (labels[j] != 0) continue;
        pairs += 1.0;
        if (scores[i] > scores[j])
          wins += 1.0;
        else if (scores[i] == scores[j])
          wins += 0.5;
      }
    }
    double brute = wins / pairs;
    expect(fast == brute, "trial " + std::to_string(trial) + ": " + fmt(fast) +
                              " != brute " + fmt(brute));
  }
}

// Shared CLI-driving helpers for criteria 5, 6, 10.
struct PipelineRun {
  testsupport::TempDir tmp;
  std::filesystem::path config_path;
  std::filesystem::path out;
  std::vector<std::string> commands;

  PipelineRun(const std::string& tag, const Corpus& main_corpus,
              const Corpus* mr_corpus, std::uint64_t seed)
      : tmp("accept_" + tag) {
    save_corpus(main_corpus, (tmp / "main.jsonl").string());
    out = tmp / "out";
    json corpus_cfg = {{"main", (tmp / "main.jsonl").string()}};
    commands = {"ingest", "extract", "audit", "train", "eval", "compare"};
    if (mr_corpus) {
      save_corpus(*mr_corpus, (tmp / "mr.jsonl").string());
      corpus_cfg["mr_augment"] = (tmp / "mr.jsonl").string();
      commands = {"ingest", "extract", "audit", "augment", "train", "eval", "compare"};
    }
    json cfg = {{"corpus", corpus_cfg}, {"out_dir", out.string()}, {"seed", seed}};
    config_path = tmp / "run.json";
    std::ofstream(config_path) << cfg.dump(2);
  }

  void run_all() {
    for (const std::string& cmd : commands) {
      testsupport::CliResult r = testsupport::run_cli(
          kCli, cmd + " --config '" + config_path.string() + "'", tmp / "scratch");
      expect(r.exit_code == 0, cmd + " exited " + std::to_string(r.exit_code) + ": " + r.err);
    }
  }

  double subgroup_accuracy(const std::string& report, const std::string& subgroup) {
    json doc = json::parse(slurp(out / report));
    expect(doc["per_subgroup_accuracy"].contains(subgroup),
           report + " lacks subgroup " + subgroup);
    return doc["per_subgroup_accuracy"][subgroup].get<double>();
  }
};

// 5. End-to-end synthetic-bias reproduction on a 2,000-article corpus.
void criterion_bias_reproduction() {
  auto start = std::chrono::steady_clock::now();
  testsupport::SynthSpec spec;
  spec.hr = 1000;
  spec.hf = 500;
  spec.mf = 500;
  spec.seed = 4242;
  PipelineRun run("bias", testsupport::make_synthetic_corpus(spec), nullptr, 4242);
  run.run_all();

  double base_hf = run.subgroup_accuracy("report_baseline.json", "HF");
  double base_mf = run.subgroup_accuracy("report_baseline.json", "MF");
  double deb_hf = run.subgroup_accuracy("report_debiased.json", "HF");
  double deb_mf = run.subgroup_accuracy("report_debiased.json", "MF");

  expect(base_mf - base_hf >= 0.20, "baseline MF-HF gap " + fmt(base_mf - base_hf) +
                                        " < 0.20 (MF " + fmt(base_mf) + ", HF " +
                                        fmt(base_hf) + ")");
  expect(deb_mf < base_mf,
         "debiased MF " + fmt(deb_mf) + " did not drop from " + fmt(base_mf));
  expect(deb_hf > base_hf,
         "debiased HF " + fmt(deb_hf) + " did not rise from " + fmt(base_hf));
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  expect(secs < 60.0, "full run took " + fmt(secs) + "s (>= 60s)");
}

// 6. MR augmentation lifts MR accuracy without sacrificing HF.
void criterion_augmentation(PipelineRun** out_run) {
  testsupport::SynthSpec spec;
  spec.hr = 600;
  spec.hf = 300;
  spec.mf = 300;
  spec.seed = 777;
  Corpus mr = testsupport::make_mr_corpus(400, 778);
  static PipelineRun run("augment", testsupport::make_synthetic_corpus(spec), &mr, 777);
  *out_run = &run;
  run.run_all();

  double base_mr = run.subgroup_accuracy("report_baseline.json", "MR");
  double base_hf = run.subgroup_accuracy("report_baseline.json", "HF");
  double aug_mr = run.subgroup_accuracy("report_augmented.json", "MR");
  double aug_hf = run.subgroup_accuracy("report_augmented.json", "HF");

  expect(aug_mr - base_mr >= 0.20, "MR gain " + fmt(aug_mr - base_mr) + " < 0.20 (" +
                                       fmt(base_mr) + " -> " + fmt(aug_mr) + ")");
  expect(aug_hf >= base_hf - 0.05, "HF regressed " + fmt(base_hf) + " -> " + fmt(aug_hf));
}

// 7. MAUVE: identity, separation, symmetry.
void criterion_mauve() {
  std::mt19937_64 rng(55);
  std::normal_distribution<double> noise(0.0, 1.0);
  const std::size_t n = 500, d = 16;
  auto cloud = [&](double center) {
    mauve::EmbeddingSet set;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> row(d);
      for (double& v : row) v = center + noise(rng);
      set.ids.push_back("e" + std::to_string(set.vectors.size()));
      set.vectors.push_back(std::move(row));
    }
    return set;
  };
  mauve::MauveConfig cfg;
  mauve::EmbeddingSet p = cloud(0.0);
  double self_score = mauve::mauve_score(p, p, cfg).score;
  expect(self_score >= 0.95, "identical sets scored " + fmt(self_score));

  // Centers 20/sqrt(d) apart per coordinate: Euclidean separation 20.
  mauve::EmbeddingSet q = cloud(20.0 / std::sqrt(static_cast<double>(d)));
  double apart = mauve::mauve_score(p, q, cfg).score;
  expect(apart <= 0.05, "separated clouds scored " + fmt(apart));

  double swapped = mauve::mauve_score(q, p, cfg).score;
  expect(std::fabs(apart - swapped) < 1e-6,
         "asymmetry " + fmt(std::fabs(apart - swapped)));
}

// 8. diff_reports reproduces the transcribed before/after row exactly.
void criterion_diff_anchor() {
  eval::EvalReport before, after;
  before.overall_accuracy = 0.7797;
  after.overall_accuracy = 0.8446;
  before.per_subgroup_accuracy[Subgroup::MR] = 0.2424;
  after.per_subgroup_accuracy[Subgroup::MR] = 0.9070;
  before.per_subgroup_counts[Subgroup::MR] = 100;
  after.per_subgroup_counts[Subgroup::MR] = 100;
  eval::DiffReport diff = eval::diff_reports(before, after);

  expect(diff.overall_accuracy.difference == 0.8446 - 0.7797,
         "overall difference is not the exact subtraction");
  expect(diff.per_subgroup_accuracy.at(Subgroup::MR).difference == 0.9070 - 0.2424,
         "MR difference is not the exact subtraction");
  std::string rendered = eval::render_diff(diff);
  expect(rendered.find("+6.49") != std::string::npos, "rendered diff lacks +6.49");
  expect(rendered.find("+66.46") != std::string::npos, "rendered diff lacks +66.46");
}

// 9. Cohen's kappa: identity, the hand-derived fixture, range bounds.
void criterion_kappa() {
  std::vector<int> same = {0, 1, 1, 0, 2, 1};
  expect(eval::cohens_kappa(same, same) == 1.0, "identity kappa != 1");
  double fixture = eval::cohens_kappa({0, 0, 1, 1}, {0, 0, 1, 0});
  expect(fixture == 0.5, "fixture kappa " + fmt(fixture) + " != 0.5");

  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> rating(0, 3);
  std::uniform_int_distribution<std::size_t> ndist(2, 50);
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t n = ndist(rng);
    std::vector<int> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = rating(rng);
      b[i] = rating(rng);
    }
    double k = eval::cohens_kappa(a, b);
    expect(k >= -1.0 - 1e-12 && k <= 1.0 + 1e-12,
           "trial " + std::to_string(trial) + ": kappa " + fmt(k) + " out of range");
  }
}

// 10. Rerunning every command reproduces each artifact byte for byte.
void criterion_determinism(PipelineRun* run) {
  expect(run != nullptr, "criterion 6 did not leave a workspace to rerun");
  std::map<std::string, std::string> before;
  for (const auto& entry : std::filesystem::directory_iterator(run->out))
    before[entry.path().filename().string()] = slurp(entry.path());
  expect(before.size() > 10, "unexpectedly few artifacts to compare");
  run->run_all();
  for (const auto& entry : std::filesystem::directory_iterator(run->out)) {
    std::string name = entry.path().filename().string();
    if (name == "run.log") continue;  // timestamps are excluded by design
    expect(slurp(entry.path()) == before[name], name + " changed across reruns");
  }
}

}  // namespace

int main() {
  PipelineRun* augment_run = nullptr;
  struct Criterion {
    std::string name;
    std::function<void()> fn;
  };
  std::vector<Criterion> criteria = {
      {"formula exactness (SMOG, Coleman-Liau)", criterion_formulas},
      {"Tukey HSD oracle match", criterion_tukey},
      {"logistic-regression gradient correctness", criterion_gradient},
      {"AUROC brute-force equivalence", criterion_auroc},
      {"synthetic-bias reproduction end to end", criterion_bias_reproduction},
      {"machine-real augmentation mitigation",
       [&] { criterion_augmentation(&augment_run); }},
      {"MAUVE identity, separation, symmetry", criterion_mauve},
      {"report diff paper anchor", criterion_diff_anchor},
      {"Cohen's kappa fixtures and bounds", criterion_kappa},
      {"byte-identical deterministic reruns",
       [&] { criterion_determinism(augment_run); }},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string detail;
    bool ok = true;
    try {
      criteria[i].fn();
    } catch (const CheckFailure& f) {
      ok = false;
      detail = f.detail;
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("unexpected exception: ") + e.what();
    }
    std::printf("criterion %02zu [%s]: %s\n", i + 1, ok ? "PASS" : "FAIL",
                criteria[i].name.c_str());
    if (!ok) {
      std::printf("    %s\n", detail.c_str());
      ++failures;
    }
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
