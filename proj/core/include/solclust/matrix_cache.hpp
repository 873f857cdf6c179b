#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "solclust/distance.hpp"

namespace solclust {

/// On-disk cache of distance matrices keyed by metric, resampling policy, DTW
/// band and a SHA-256 of the profiles (dates and values). An empty directory
/// disables caching.
class MatrixCache {
 public:
  explicit MatrixCache(std::filesystem::path dir = {}) : dir_(std::move(dir)) {}

  static std::string key(std::span<const ProfileVector> profiles, Metric metric,
                         const PairwiseOptions& options);

  DistanceMatrix get_or_compute(std::span<const ProfileVector> profiles, Metric metric,
                                const PairwiseOptions& options);

  std::size_t hits() const { return hits_; }
  std::size_t misses() const { return misses_; }

 private:
  std::filesystem::path dir_;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
};

}  // namespace solclust
