#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "newsaudit/stats/tukey.hpp"
#include "newsaudit/textfeat/features.hpp"

namespace newsaudit::stats {

enum class Direction { less, greater, none };
enum class Bucket { ns, b1, b2, b3, b4 };

std::string to_string(Direction d);
std::string to_string(Bucket b);
Direction direction_from_string(const std::string& s);
Bucket bucket_from_string(const std::string& s);

// p-value thresholds behind the four significance buckets:
// b1: p < 0.05, b2: p < 0.01, b3: p < 0.001, b4: p < 0.0001; ns otherwise.
Bucket bucket_for_p(double p);

// One Tukey comparison for one feature. direction compares mean(pair.first)
// to mean(pair.second) and is `none` exactly when the bucket is ns.
struct PairwiseResult {
  std::string feature;
  std::pair<Subgroup, Subgroup> pair;
  Direction direction = Direction::none;
  double p_value = 1.0;
  Bucket bucket = Bucket::ns;
};

// Three rows per schema feature, in schema order, pair order
// (HF,MF), (MF,HR), (HF,HR).
struct SignificanceTable {
  std::vector<PairwiseResult> rows;

  // The pairs every feature is tested over, in row order.
  static const std::vector<std::pair<Subgroup, Subgroup>>& pairs();
  const PairwiseResult& row(const std::string& feature,
                            const std::pair<Subgroup, Subgroup>& pair) const;
};

// Runs Tukey's HSD per schema feature over the HF/MF/HR samples of the
// matrix (MR rows are not part of the three-way comparison). Requires at
// least two samples in each of HF, MF, and HR; throws ValidationError naming
// a missing subgroup.
SignificanceTable significance_table(const textfeat::FeatureMatrix& matrix);

enum class DebiasRule { A, B };

std::string to_string(DebiasRule r);
DebiasRule debias_rule_from_string(const std::string& s);

// Feature selection from the significance table, in schema order.
//   Rule A: features whose (HF,MF) comparison is not significant.
//   Rule B: Rule A plus features whose (HF,HR) comparison IS significant.
// Throws ValidationError when the selection comes out empty (advises trying
// the other rule or different thresholds).
std::vector<std::string> select_debiased_features(const SignificanceTable& table,
                                                  DebiasRule rule);

// CSV round trip: columns feature,group_pair,direction,p_value,bucket with
// optional leading `# <meta>` comment lines.
void save_significance_csv(std::ostream& out, const SignificanceTable& table,
                           const std::vector<std::string>& meta = {});
void save_significance_csv(const std::filesystem::path& file,
                           const SignificanceTable& table,
                           const std::vector<std::string>& meta = {});
SignificanceTable parse_significance_csv(std::istream& in);
SignificanceTable load_significance_csv(const std::filesystem::path& file);

// Plain-text rendering: one row per feature, one column per pair, cells like
// "HF > MF ***" (or "-" when not significant), grouped by feature group.
std::string render_significance_table(const SignificanceTable& table);

}  // namespace newsaudit::stats
