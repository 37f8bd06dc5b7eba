#pragma once

#include <string>
#include <vector>

namespace newsaudit::eval {

// Chance-corrected inter-annotator agreement over two equal-length rating
// sequences (arbitrary integer category codes):
//   kappa = (p_o - p_e) / (1 - p_e)
// with p_o the observed agreement rate and p_e the expected agreement under
// independent marginals. Degenerate convention: p_e = 1 only occurs when both
// annotators always used one shared category, which forces p_o = 1; kappa is
// then 1. Throws ValidationError on empty input or length mismatch.
double cohens_kappa(const std::vector<int>& ann_a, const std::vector<int>& ann_b);

// Qualitative label for a kappa value on the conventional interpretation
// scale (slight / fair / moderate / substantial / almost perfect).
std::string kappa_interpretation(double kappa);

// Standard cosine similarity between two equal-length embedding vectors.
// Throws ValidationError on empty input, length mismatch, non-finite
// entries, or a zero-norm vector.
double cosine_consistency(const std::vector<double>& emb_a,
                          const std::vector<double>& emb_b);

}  // namespace newsaudit::eval
