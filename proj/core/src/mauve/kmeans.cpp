#include "newsaudit/mauve/kmeans.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "newsaudit/errors.hpp"

namespace newsaudit::mauve {

namespace {

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

// Uniform double in [0, 1) from one 64-bit draw (top 53 bits).
double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct Attempt {
  std::vector<int> assignments;
  std::vector<std::vector<double>> centroids;
  double inertia = std::numeric_limits<double>::infinity();
};

Attempt run_attempt(const std::vector<std::vector<double>>& points, int k,
                    std::uint64_t seed) {
  const std::size_t n = points.size();
  std::mt19937_64 rng(seed);

  // k-means++ seeding: first centroid uniform, then D^2-weighted draws.
  std::vector<std::vector<double>> centroids;
  centroids.reserve(k);
  std::vector<bool> chosen(n, false);
  std::size_t first = static_cast<std::size_t>(rng() % n);
  centroids.push_back(points[first]);
  chosen[first] = true;
  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i) d2[i] = sq_dist(points[i], centroids[0]);
  while (static_cast<int>(centroids.size()) < k) {
    double total = 0.0;
    for (double v : d2) total += v;
    std::size_t pick = n;  // sentinel
    if (total > 0.0) {
      double r = unit_double(rng) * total;
      double cum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        cum += d2[i];
        if (r < cum) {
          pick = i;
          break;
        }
      }
      if (pick == n) {  // r landed on the accumulated rounding tail
        for (std::size_t i = n; i-- > 0;)
          if (d2[i] > 0.0) {
            pick = i;
            break;
          }
      }
    }
    if (pick == n) {
      // All remaining mass is zero (duplicate points): take the first
      // point not already chosen so k distinct slots still get filled.
      for (std::size_t i = 0; i < n; ++i)
        if (!chosen[i]) {
          pick = i;
          break;
        }
      if (pick == n) pick = 0;
    }
    chosen[pick] = true;
    centroids.push_back(points[pick]);
    for (std::size_t i = 0; i < n; ++i)
      d2[i] = std::min(d2[i], sq_dist(points[i], centroids.back()));
  }

  std::vector<int> assign(n, 0);
  auto assign_all = [&]() {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      int best = 0;
      double best_d = sq_dist(points[i], centroids[0]);
      for (int c = 1; c < k; ++c) {
        double d = sq_dist(points[i], centroids[c]);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (assign[i] != best) {
        assign[i] = best;
        changed = true;
      }
    }
    return changed;
  };

  assign_all();
  const int kMaxIter = 100;
  const std::size_t dim = points[0].size();
  for (int iter = 0; iter < kMaxIter; ++iter) {
    // Recompute centroids.
    std::vector<std::vector<double>> sums(k, std::vector<double>(dim, 0.0));
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      counts[assign[i]] += 1;
      for (std::size_t j = 0; j < dim; ++j) sums[assign[i]][j] += points[i][j];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[c] == 0) {
        // Re-seed the emptied cluster with the point farthest from its
        // centroid (lowest index on ties), then rebalance next sweep.
        std::size_t far = 0;
        double far_d = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
          double d = sq_dist(points[i], centroids[assign[i]]);
          if (d > far_d) {
            far_d = d;
            far = i;
          }
        }
        centroids[c] = points[far];
        assign[far] = c;
        continue;
      }
      for (std::size_t j = 0; j < dim; ++j)
        centroids[c][j] = sums[c][j] / static_cast<double>(counts[c]);
    }
    if (!assign_all()) break;
  }

  Attempt a;
  a.inertia = 0.0;
  for (std::size_t i = 0; i < n; ++i) a.inertia += sq_dist(points[i], centroids[assign[i]]);
  a.assignments = std::move(assign);
  a.centroids = std::move(centroids);
  return a;
}

}  // namespace

KMeansResult kmeans(const std::vector<std::vector<double>>& points, int k,
                    std::uint64_t seed, int restarts) {
  if (points.empty()) throw ValidationError("kmeans: no points");
  const std::size_t dim = points[0].size();
  if (dim == 0) throw ValidationError("kmeans: zero-dimensional points");
  for (const auto& row : points) {
    if (row.size() != dim) throw ValidationError("kmeans: ragged point rows");
    for (double v : row)
      if (!std::isfinite(v)) throw ValidationError("kmeans: non-finite coordinate");
  }
  if (k < 1) throw ValidationError("kmeans: k must be >= 1");
  if (static_cast<std::size_t>(k) > points.size())
    throw ValidationError("kmeans: k (" + std::to_string(k) + ") exceeds point count (" +
                          std::to_string(points.size()) + ")");
  if (restarts < 1) throw ValidationError("kmeans: restarts must be >= 1");

  Attempt best;
  for (int r = 0; r < restarts; ++r) {
    Attempt a = run_attempt(points, k, seed + static_cast<std::uint64_t>(r));
    if (a.inertia < best.inertia) best = std::move(a);  // ties keep lowest restart index
  }
  KMeansResult res;
  res.assignments = std::move(best.assignments);
  res.centroids = std::move(best.centroids);
  res.inertia = best.inertia;
  return res;
}

}  // namespace newsaudit::mauve
