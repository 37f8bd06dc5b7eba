#pragma once

#include <map>
#include <vector>

#include "newsaudit/corpus.hpp"

namespace newsaudit::stats {

// One feature's samples keyed by subgroup. Operations require at least two
// groups with at least two samples each.
struct GroupSamples {
  std::map<Subgroup, std::vector<double>> groups;
};

struct AnovaResult {
  double f = 0.0;
  double p = 1.0;
  double ms_within = 0.0;  // pooled within-group mean square (Tukey reuses it)
  double df_within = 0.0;
};

// One-way ANOVA. p comes from the F-distribution CDF. When every group has
// zero within-group variance: p = 1 if all means are equal (F defined as 0),
// p = 0 otherwise (infinite F), by documented convention.
AnovaResult anova_oneway(const GroupSamples& samples);

struct TukeyComparison {
  Subgroup a = Subgroup::HR;
  Subgroup b = Subgroup::HR;
  double mean_diff = 0.0;  // mean(a) - mean(b)
  double p_value = 1.0;
};

// Tukey's HSD over all unordered group pairs, with the Tukey-Kramer
// unequal-n standard error sqrt(MSW/2 * (1/n_a + 1/n_b)). For each pair,
// p = 1 - studentized_range_cdf(|mean_diff| / SE, k, N - k). Zero pooled
// variance follows the anova_oneway convention per pair: p = 0 when the two
// means differ, 1 when they are equal.
std::vector<TukeyComparison> tukey_hsd(const GroupSamples& samples);

}  // namespace newsaudit::stats
