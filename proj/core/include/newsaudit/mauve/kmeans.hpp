#pragma once

#include <cstdint>
#include <vector>

namespace newsaudit::mauve {

struct KMeansResult {
  std::vector<int> assignments;  // one cluster id in [0, k) per input row
  std::vector<std::vector<double>> centroids;  // k rows of dimension d
  double inertia = 0.0;  // sum of squared distances to assigned centroids
};

// Lloyd's algorithm with k-means++ seeding, deterministic given the seed.
// Runs `restarts` independent seeded attempts and keeps the lowest inertia
// (ties broken by restart index). Each attempt caps Lloyd iterations at 100;
// an emptied cluster is re-seeded with the point farthest from its assigned
// centroid. Distance ties assign to the lowest cluster index. Throws
// ValidationError when points are empty, rows are ragged or non-finite,
// k < 1, or k > n.
KMeansResult kmeans(const std::vector<std::vector<double>>& points, int k,
                    std::uint64_t seed, int restarts = 8);

}  // namespace newsaudit::mauve
