#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace newsaudit::mauve {

// Embedding vectors for one text collection; rows align with ids.
struct EmbeddingSet {
  std::vector<std::string> ids;
  std::vector<std::vector<double>> vectors;

  std::size_t size() const { return vectors.size(); }
  std::size_t dim() const { return vectors.empty() ? 0 : vectors[0].size(); }
};

struct MauveConfig {
  // 0 selects the default k = max(2, (n_P + n_Q) / 10).
  int num_clusters = 0;
  double scaling_constant = 5.0;  // c in exp(-c * KL)
  int grid_size = 25;             // interior lambda count; must be >= 3
  std::uint64_t seed = 0;
  double epsilon = 1e-8;  // additive histogram smoothing
};

// One divergence-frontier point. Grid points carry their lambda; the two
// appended corner points (1,0) and (0,1) do not.
struct FrontierPoint {
  std::optional<double> lambda;
  double x = 0.0;  // exp(-c * KL(q_hat || r_lambda))
  double y = 0.0;  // exp(-c * KL(p_hat || r_lambda))
};

struct MauveResult {
  double score = 0.0;  // area under the divergence frontier, in (0, 1]
  int num_clusters = 0;
  std::vector<FrontierPoint> frontier;  // sorted by x ascending
};

// Validates invariants: at least 2 rows, consistent dimension, finite values,
// unique nonempty ids; throws ValidationError.
void validate_embedding_set(const EmbeddingSet& set);

// Distribution similarity between two embedded collections:
//   1. jointly quantize P's and Q's rows with seeded k-means;
//   2. per-set cluster histograms, smoothed to (count + eps) / (n + eps*k);
//   3. for each lambda_i = i / (grid_size + 1), i = 1..grid_size, mix
//      r = lambda * p_hat + (1 - lambda) * q_hat and record the point
//      (exp(-c*KL(q_hat||r)), exp(-c*KL(p_hat||r)));
//   4. append corner points (1,0) and (0,1) and integrate the frontier over
//      x with the trapezoidal rule.
// Symmetric in (P, Q) because the lambda grid is symmetric about 1/2.
// Throws ValidationError on dimension mismatch or invalid config.
MauveResult mauve_score(const EmbeddingSet& p, const EmbeddingSet& q,
                        const MauveConfig& cfg = {});

// Embedding CSV: one row per article, first column article_id, remaining
// columns the vector entries. A first line whose second field is not
// numeric is treated as a header and skipped.
EmbeddingSet parse_embeddings(std::istream& in);
EmbeddingSet load_embeddings(const std::filesystem::path& file);

// Frontier as CSV rows "lambda,x,y" (corner rows leave lambda empty),
// preceded by any "# key: value" meta lines supplied by the caller.
std::string frontier_to_csv(const MauveResult& result,
                            const std::vector<std::string>& meta_lines = {});

}  // namespace newsaudit::mauve
