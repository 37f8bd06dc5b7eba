#include "newsaudit/mauve/mauve.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "newsaudit/detail/format.hpp"
#include "newsaudit/errors.hpp"
#include "newsaudit/mauve/kmeans.hpp"

namespace newsaudit::mauve {

namespace {

double kl_divergence(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::log(a[i] / b[i]);
  // Guard against tiny negative drift when a == b elementwise.
  return s < 0.0 ? 0.0 : s;
}

void validate_config(const MauveConfig& cfg, std::size_t total_rows) {
  if (cfg.num_clusters < 0)
    throw ValidationError("mauve: num_clusters must be positive (or 0 for the default)");
  if (cfg.num_clusters > 0 && static_cast<std::size_t>(cfg.num_clusters) > total_rows)
    throw ValidationError("mauve: num_clusters exceeds total row count");
  if (!(cfg.scaling_constant > 0.0))
    throw ValidationError("mauve: scaling_constant must be > 0");
  if (cfg.grid_size < 3) throw ValidationError("mauve: grid_size must be >= 3");
  if (!(cfg.epsilon > 0.0)) throw ValidationError("mauve: epsilon must be > 0");
}

}  // namespace

void validate_embedding_set(const EmbeddingSet& set) {
  if (set.vectors.size() < 2)
    throw ValidationError("embedding set needs at least 2 rows, got " +
                          std::to_string(set.vectors.size()));
  if (set.ids.size() != set.vectors.size())
    throw ValidationError("embedding set ids/vectors length mismatch");
  const std::size_t d = set.vectors[0].size();
  if (d == 0) throw ValidationError("embedding set has zero-dimensional rows");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < set.vectors.size(); ++i) {
    if (set.ids[i].empty()) throw ValidationError("embedding row with empty id");
    if (!seen.insert(set.ids[i]).second)
      throw ValidationError("duplicate embedding id '" + set.ids[i] + "'");
    if (set.vectors[i].size() != d)
      throw ValidationError("embedding row '" + set.ids[i] + "' has dimension " +
                            std::to_string(set.vectors[i].size()) + ", expected " +
                            std::to_string(d));
    for (double v : set.vectors[i])
      if (!std::isfinite(v))
        throw ValidationError("non-finite embedding value for id '" + set.ids[i] + "'");
  }
}

MauveResult mauve_score(const EmbeddingSet& p, const EmbeddingSet& q,
                        const MauveConfig& cfg) {
  validate_embedding_set(p);
  validate_embedding_set(q);
  if (p.dim() != q.dim())
    throw ValidationError("mauve: embedding dimensions differ (" +
                          std::to_string(p.dim()) + " vs " + std::to_string(q.dim()) +
                          ")");
  const std::size_t n_p = p.size(), n_q = q.size();
  validate_config(cfg, n_p + n_q);
  int k = cfg.num_clusters > 0
              ? cfg.num_clusters
              : std::max<int>(2, static_cast<int>((n_p + n_q) / 10));
  k = std::min<int>(k, static_cast<int>(n_p + n_q));

  // Joint quantization so both histograms live over the same support.
  std::vector<std::vector<double>> joint;
  joint.reserve(n_p + n_q);
  joint.insert(joint.end(), p.vectors.begin(), p.vectors.end());
  joint.insert(joint.end(), q.vectors.begin(), q.vectors.end());
  KMeansResult km = kmeans(joint, k, cfg.seed);

  std::vector<double> p_hat(k, 0.0), q_hat(k, 0.0);
  for (std::size_t i = 0; i < n_p; ++i) p_hat[km.assignments[i]] += 1.0;
  for (std::size_t i = 0; i < n_q; ++i) q_hat[km.assignments[n_p + i]] += 1.0;
  const double eps = cfg.epsilon;
  for (int c = 0; c < k; ++c) {
    p_hat[c] = (p_hat[c] + eps) / (static_cast<double>(n_p) + eps * k);
    q_hat[c] = (q_hat[c] + eps) / (static_cast<double>(n_q) + eps * k);
  }

  MauveResult result;
  result.num_clusters = k;
  result.frontier.reserve(cfg.grid_size + 2);
  for (int i = 1; i <= cfg.grid_size; ++i) {
    const double lambda = static_cast<double>(i) / (cfg.grid_size + 1);
    std::vector<double> r(k);
    for (int c = 0; c < k; ++c) r[c] = lambda * p_hat[c] + (1.0 - lambda) * q_hat[c];
    FrontierPoint pt;
    pt.lambda = lambda;
    pt.x = std::exp(-cfg.scaling_constant * kl_divergence(q_hat, r));
    pt.y = std::exp(-cfg.scaling_constant * kl_divergence(p_hat, r));
    result.frontier.push_back(pt);
  }
  result.frontier.push_back(FrontierPoint{std::nullopt, 1.0, 0.0});
  result.frontier.push_back(FrontierPoint{std::nullopt, 0.0, 1.0});

  std::sort(result.frontier.begin(), result.frontier.end(),
            [](const FrontierPoint& a, const FrontierPoint& b) {
              if (a.x != b.x) return a.x < b.x;
              return a.y > b.y;
            });

  double area = 0.0;
  for (std::size_t i = 1; i < result.frontier.size(); ++i) {
    const FrontierPoint& a = result.frontier[i - 1];
    const FrontierPoint& b = result.frontier[i];
    area += (b.x - a.x) * (a.y + b.y) * 0.5;
  }
  result.score = std::min(area, 1.0);
  return result;
}

EmbeddingSet parse_embeddings(std::istream& in) {
  EmbeddingSet set;
  std::string line;
  long line_no = 0;
  bool first_data_line = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields = detail::split_csv_line(line);
    if (fields.size() < 2)
      throw ParseError("embedding row needs an id plus at least one value", line_no);
    std::vector<double> row;
    row.reserve(fields.size() - 1);
    bool numeric = true;
    for (std::size_t i = 1; i < fields.size(); ++i) {
      try {
        std::size_t used = 0;
        double v = std::stod(fields[i], &used);
        if (used != fields[i].size()) throw std::invalid_argument("trailing junk");
        row.push_back(v);
      } catch (const std::exception&) {
        numeric = false;
        break;
      }
    }
    if (!numeric) {
      if (first_data_line) {  // header line: "article_id,e0,e1,..."
        first_data_line = false;
        continue;
      }
      throw ParseError("non-numeric embedding value", line_no);
    }
    first_data_line = false;
    set.ids.push_back(fields[0]);
    set.vectors.push_back(std::move(row));
  }
  validate_embedding_set(set);
  return set;
}

EmbeddingSet load_embeddings(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open embeddings file: " + file.string());
  return parse_embeddings(in);
}

std::string frontier_to_csv(const MauveResult& result,
                            const std::vector<std::string>& meta_lines) {
  std::string out;
  for (const std::string& m : meta_lines) out += "# " + m + "\n";
  out += "# score: " + detail::format_double(result.score) + "\n";
  out += "# num_clusters: " + std::to_string(result.num_clusters) + "\n";
  out += "lambda,x,y\n";
  for (const FrontierPoint& pt : result.frontier) {
    if (pt.lambda) out += detail::format_double(*pt.lambda);
    out += ',';
    out += detail::format_double(pt.x);
    out += ',';
    out += detail::format_double(pt.y);
    out += '\n';
  }
  return out;
}

}  // namespace newsaudit::mauve
