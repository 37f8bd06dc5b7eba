#include "newsaudit/eval/agreement.hpp"

#include <cmath>
#include <map>

#include "newsaudit/errors.hpp"

namespace newsaudit::eval {

double cohens_kappa(const std::vector<int>& ann_a, const std::vector<int>& ann_b) {
  if (ann_a.empty()) throw ValidationError("cohens_kappa: empty annotations");
  if (ann_a.size() != ann_b.size())
    throw ValidationError("cohens_kappa: annotation lengths differ (" +
                          std::to_string(ann_a.size()) + " vs " +
                          std::to_string(ann_b.size()) + ")");
  const double n = static_cast<double>(ann_a.size());
  std::size_t agree = 0;
  std::map<int, std::size_t> count_a, count_b;
  for (std::size_t i = 0; i < ann_a.size(); ++i) {
    if (ann_a[i] == ann_b[i]) ++agree;
    count_a[ann_a[i]] += 1;
    count_b[ann_b[i]] += 1;
  }
  const double p_o = static_cast<double>(agree) / n;
  double p_e = 0.0;
  for (const auto& [cat, na] : count_a) {
    auto it = count_b.find(cat);
    if (it == count_b.end()) continue;
    p_e += (static_cast<double>(na) / n) * (static_cast<double>(it->second) / n);
  }
  // p_e = 1 iff both annotators are constant on the same category, which
  // implies p_o = 1; perfect agreement by convention.
  if (p_e >= 1.0) return 1.0;
  return (p_o - p_e) / (1.0 - p_e);
}

std::string kappa_interpretation(double kappa) {
  if (kappa < 0.0) return "poor";
  if (kappa <= 0.20) return "slight";
  if (kappa <= 0.40) return "fair";
  if (kappa <= 0.60) return "moderate";
  if (kappa <= 0.80) return "substantial";
  return "almost perfect";
}

double cosine_consistency(const std::vector<double>& emb_a,
                          const std::vector<double>& emb_b) {
  if (emb_a.empty()) throw ValidationError("cosine_consistency: empty vectors");
  if (emb_a.size() != emb_b.size())
    throw ValidationError("cosine_consistency: vector lengths differ (" +
                          std::to_string(emb_a.size()) + " vs " +
                          std::to_string(emb_b.size()) + ")");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < emb_a.size(); ++i) {
    if (!std::isfinite(emb_a[i]) || !std::isfinite(emb_b[i]))
      throw ValidationError("cosine_consistency: non-finite entry");
    dot += emb_a[i] * emb_b[i];
    na += emb_a[i] * emb_a[i];
    nb += emb_b[i] * emb_b[i];
  }
  if (na == 0.0 || nb == 0.0)
    throw ValidationError("cosine_consistency: zero-norm vector");
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace newsaudit::eval
