#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "newsaudit/corpus.hpp"

namespace newsaudit::eval {

// One detector output for one article. `pred` is the hard decision; when it
// is absent (external prediction files may omit it) the evaluator derives
// pred = [score >= threshold] with the threshold recorded in the report.
struct Prediction {
  std::string article_id;
  double score = 0.0;  // fake-class probability, in [0, 1]
  std::optional<int> pred;  // 0 or 1 when present
};

// Subgroup-aware evaluation summary. All metrics live in [0, 1]; renderers
// scale to percent. `overall_accuracy` is the count-weighted mean of the
// subgroup accuracies (consistent with overall = total correct / total).
// MR appears in the maps only when the evaluated corpus contains MR
// articles, mirroring the report tables.
struct EvalReport {
  std::map<Subgroup, double> per_subgroup_accuracy;
  std::map<Subgroup, std::size_t> per_subgroup_counts;
  double overall_accuracy = 0.0;
  double precision = 0.0;  // fake = 1 is the positive class
  double recall = 0.0;
  double f1 = 0.0;
  double auroc = 0.0;
  double threshold = 0.5;  // tau used to derive missing preds
  // Run metadata recorded alongside the metrics.
  std::uint64_t seed = 0;
  std::string split;  // e.g. "test"

  bool has_subgroup(Subgroup g) const {
    return per_subgroup_counts.count(g) != 0;
  }
};

// One metric's before/after pair; difference = after - before exactly.
struct DiffCell {
  double before = 0.0;
  double after = 0.0;
  double difference = 0.0;
};

// Elementwise comparison of two reports over the same corpus.
struct DiffReport {
  std::map<Subgroup, DiffCell> per_subgroup_accuracy;
  DiffCell overall_accuracy;
  DiffCell precision;
  DiffCell recall;
  DiffCell f1;
  DiffCell auroc;
};

// Scores every prediction against the corpus labels. Every prediction id
// must exist in the corpus and every article must be predicted exactly once;
// mismatches throw ValidationError listing the missing and extra ids.
// Precision/recall/F1 take fake = 1 as the positive class; a denominator of
// zero (no predicted positives / no actual positives) yields 0 for that
// metric. AUROC follows the auroc() convention below and requires both
// classes present.
EvalReport evaluate(const std::vector<Prediction>& preds, const Corpus& corpus,
                    double threshold = 0.5);

// Area under the ROC curve via the Mann-Whitney rank formulation: the
// probability that a uniformly random positive outscores a uniformly random
// negative, ties counting 1/2. Rank sums are accumulated in integer
// arithmetic (half-integer average ranks are doubled), so the result equals
// brute-force pair counting exactly. Throws ValidationError when labels are
// empty, sizes mismatch, or only one class is present.
double auroc(const std::vector<double>& scores, const std::vector<int>& labels);

// Exact elementwise subtraction (after - before) of two reports. The reports
// must describe the same corpus: identical subgroup key sets and per-subgroup
// counts, else ValidationError.
DiffReport diff_reports(const EvalReport& before, const EvalReport& after);

// Prediction files are JSON Lines: one object per line with keys
// id (string), score (number in [0,1]), optional pred (0 or 1).
std::vector<Prediction> parse_predictions(std::istream& in);
std::vector<Prediction> load_predictions(const std::filesystem::path& file);
std::string predictions_to_jsonl(const std::vector<Prediction>& preds);
void save_predictions(const std::filesystem::path& file,
                      const std::vector<Prediction>& preds);

// JSON serialization of reports (machine-readable artifact form). Unknown
// keys in the input are ignored so callers may wrap reports with metadata.
std::string report_to_json(const EvalReport& report);
EvalReport report_from_json(const std::string& json_text);

// Aligned-column text form mirroring the report tables: one header row
// (HR HF MF [MR] Overall F1 Recall Precision Auroc), one row of percent
// values to two decimals, and a counts row. MR appears only when present.
std::string render_report(const EvalReport& report);

// Three-column (before / after / difference) text table; differences carry
// an explicit sign and an improvement/regression annotation.
std::string render_diff(const DiffReport& diff);
std::string diff_to_json(const DiffReport& diff);
DiffReport diff_from_json(const std::string& json_text);

}  // namespace newsaudit::eval
