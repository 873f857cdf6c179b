#pragma once

#include <span>
#include <string>

#include "solclust/cluster.hpp"
#include "solclust/distance.hpp"

namespace solclust {

struct QualityScores {
  double silhouette = 0.0;
  double calinski_harabasz = 0.0;  // +inf when within-cluster dispersion is zero
  double davies_bouldin = 0.0;     // +inf when two centroids coincide
  std::string space;               // where each score was evaluated
};

/// Mean silhouette coefficient over items; singletons contribute 0.
/// Throws UndefinedError with fewer than two clusters.
double silhouette(std::span<const int> labels, const DistanceMatrix& dist);

/// Silhouette on the Euclidean distances between rows of `points`.
double silhouette(const FeatureMatrix& points, std::span<const int> labels);

/// (B / (k - 1)) / (W / (n - k)). Requires 2 <= k <= n; returns +inf when W = 0.
double calinski_harabasz(const FeatureMatrix& points, std::span<const int> labels);

/// Mean over clusters of the worst (S_i + S_j) / M_ij. Requires k >= 2; returns
/// +inf when centroids coincide.
double davies_bouldin(const FeatureMatrix& points, std::span<const int> labels);

/// Euclidean distance matrix over the rows of `points`.
DistanceMatrix euclidean_matrix(const FeatureMatrix& points, unsigned threads = 1);

}  // namespace solclust
