#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "solclust/distance.hpp"

namespace solclust {

/// Row-major n x d matrix of feature vectors.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  /// One column from a flat vector (d = 1).
  static FeatureMatrix column(std::span<const double> values);
  /// Rows from equal-length vectors. Throws DomainError on ragged input.
  static FeatureMatrix from_rows(std::span<const std::vector<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  FeatureMatrix subset(std::span<const std::size_t> indices) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct ClusterAssignment {
  std::size_t k = 0;
  std::vector<int> labels;                  // per item, in [0, k)
  std::vector<std::vector<double>> centers; // K-Means only
  std::vector<std::size_t> medoids;         // K-Medoids only, item indices
  double inertia = 0.0;  // squared distances (K-Means) or distances (K-Medoids)
  std::uint64_t seed = 0;
  int iterations = 0;
  /// Objective after each iteration of the returned run; non-increasing.
  std::vector<double> cost_history;
};

struct KMeansOptions {
  std::uint64_t seed = 42;
  int restarts = 10;
  double tol = 1e-6;  // center shift relative to the data's spread
  int max_iter = 300;
  unsigned threads = 1;  // 0 selects hardware concurrency
};

/// Lloyd iterations from K-Means++ seeding; the lowest-inertia restart wins
/// (ties go to the lower restart index). Restart r draws from a generator
/// seeded with seed + r, so the result does not depend on `threads`.
/// Throws DomainError when k is outside [1, n] or an input is non-finite.
ClusterAssignment kmeans(const FeatureMatrix& points, std::size_t k, const KMeansOptions& options = {});

struct KMedoidsOptions {
  std::uint64_t seed = 42;  // recorded only; BUILD and SWAP are deterministic
  int max_iter = 300;
};

/// PAM: greedy BUILD then best-improvement SWAP. Ties resolve to the lowest index.
ClusterAssignment kmedoids(const DistanceMatrix& dist, std::size_t k,
                           const KMedoidsOptions& options = {});

}  // namespace solclust
