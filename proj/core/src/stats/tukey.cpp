#include "newsaudit/stats/tukey.hpp"

#include <cmath>

#include "newsaudit/errors.hpp"
#include "newsaudit/stats/distributions.hpp"

namespace newsaudit::stats {

namespace {

struct GroupStats {
  Subgroup group;
  std::size_t n = 0;
  double mean = 0.0;
  double ss = 0.0;  // within-group sum of squares
};

std::vector<GroupStats> summarize(const GroupSamples& samples) {
  if (samples.groups.size() < 2)
    throw ValidationError("group comparison requires at least 2 groups");
  std::vector<GroupStats> stats;
  stats.reserve(samples.groups.size());
  for (const auto& [group, values] : samples.groups) {
    if (values.size() < 2)
      throw ValidationError("group " + to_string(group) +
                            " has fewer than 2 samples");
    GroupStats g;
    g.group = group;
    g.n = values.size();
    for (double v : values) g.mean += v;
    g.mean /= static_cast<double>(g.n);
    for (double v : values) g.ss += (v - g.mean) * (v - g.mean);
    stats.push_back(g);
  }
  return stats;
}

}  // namespace

AnovaResult anova_oneway(const GroupSamples& samples) {
  const auto stats = summarize(samples);
  const double k = static_cast<double>(stats.size());

  double n_total = 0.0, grand_sum = 0.0;
  for (const auto& g : stats) {
    n_total += static_cast<double>(g.n);
    grand_sum += g.mean * static_cast<double>(g.n);
  }
  const double grand_mean = grand_sum / n_total;

  double ss_between = 0.0, ss_within = 0.0;
  for (const auto& g : stats) {
    ss_between += static_cast<double>(g.n) * (g.mean - grand_mean) * (g.mean - grand_mean);
    ss_within += g.ss;
  }

  AnovaResult out;
  out.df_within = n_total - k;
  out.ms_within = ss_within / out.df_within;

  if (out.ms_within <= 0.0) {
    // every group constant: equal means carry no evidence, unequal means
    // are infinitely significant
    out.f = 0.0;
    out.p = ss_between > 0.0 ? 0.0 : 1.0;
    return out;
  }
  const double ms_between = ss_between / (k - 1.0);
  out.f = ms_between / out.ms_within;
  out.p = 1.0 - f_cdf(out.f, k - 1.0, out.df_within);
  return out;
}

std::vector<TukeyComparison> tukey_hsd(const GroupSamples& samples) {
  const auto stats = summarize(samples);
  const int k = static_cast<int>(stats.size());

  double n_total = 0.0, ss_within = 0.0;
  for (const auto& g : stats) {
    n_total += static_cast<double>(g.n);
    ss_within += g.ss;
  }
  const double df = n_total - k;
  const double msw = ss_within / df;

  std::vector<TukeyComparison> out;
  out.reserve(static_cast<std::size_t>(k) * (k - 1) / 2);
  for (std::size_t i = 0; i < stats.size(); ++i) {
    for (std::size_t j = i + 1; j < stats.size(); ++j) {
      TukeyComparison cmp;
      cmp.a = stats[i].group;
      cmp.b = stats[j].group;
      cmp.mean_diff = stats[i].mean - stats[j].mean;
      if (msw <= 0.0) {
        cmp.p_value = cmp.mean_diff == 0.0 ? 1.0 : 0.0;
      } else {
        const double se = std::sqrt(msw / 2.0 *
                                    (1.0 / static_cast<double>(stats[i].n) +
                                     1.0 / static_cast<double>(stats[j].n)));
        const double q = std::fabs(cmp.mean_diff) / se;
        cmp.p_value = 1.0 - studentized_range_cdf(q, k, df);
      }
      out.push_back(cmp);
    }
  }
  return out;
}

}  // namespace newsaudit::stats
