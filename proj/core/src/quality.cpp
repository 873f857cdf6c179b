#include "solclust/quality.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "solclust/error.hpp"

namespace solclust {

namespace {

// Maps arbitrary label values onto 0..k-1 in order of first appearance.
std::vector<std::size_t> compact(std::span<const int> labels, std::size_t& k) {
  std::map<int, std::size_t> ids;
  std::vector<std::size_t> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, inserted] = ids.try_emplace(labels[i], ids.size());
    out[i] = it->second;
  }
  k = ids.size();
  return out;
}

std::vector<std::vector<double>> centroids(const FeatureMatrix& x, const std::vector<std::size_t>& c,
                                           std::size_t k, std::vector<std::size_t>& sizes) {
  std::vector<std::vector<double>> mu(k, std::vector<double>(x.cols(), 0.0));
  sizes.assign(k, 0);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < x.cols(); ++j) mu[c[i]][j] += x(i, j);
    ++sizes[c[i]];
  }
  for (std::size_t q = 0; q < k; ++q) {
    for (double& v : mu[q]) v /= static_cast<double>(sizes[q]);
  }
  return mu;
}

double dist2(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += (a[j] - b[j]) * (a[j] - b[j]);
  return s;
}

void check_sizes(const FeatureMatrix& x, std::span<const int> labels) {
  if (x.rows() != labels.size()) throw DomainError("label count does not match point count");
}

}  // namespace

double silhouette(std::span<const int> labels, const DistanceMatrix& dist) {
  const std::size_t n = labels.size();
  if (dist.size() != n) throw DomainError("silhouette: label count does not match matrix size");
  std::size_t k = 0;
  const auto c = compact(labels, k);
  if (k < 2) throw UndefinedError("silhouette undefined for a single cluster");

  std::vector<std::size_t> sizes(k, 0);
  for (std::size_t ci : c) ++sizes[ci];

  double total = 0.0;
  std::vector<double> sums(k);
  for (std::size_t i = 0; i < n; ++i) {
    if (sizes[c[i]] == 1) continue;
    std::fill(sums.begin(), sums.end(), 0.0);
    const auto row = dist.row(i);
    for (std::size_t j = 0; j < n; ++j) sums[c[j]] += row[j];
    const double a = sums[c[i]] / static_cast<double>(sizes[c[i]] - 1);
    double b = std::numeric_limits<double>::infinity();
    for (std::size_t q = 0; q < k; ++q) {
      if (q != c[i]) b = std::min(b, sums[q] / static_cast<double>(sizes[q]));
    }
    const double denom = std::max(a, b);
    total += denom > 0.0 ? (b - a) / denom : 0.0;
  }
  return total / static_cast<double>(n);
}

DistanceMatrix euclidean_matrix(const FeatureMatrix& points, unsigned threads) {
  std::vector<ProfileVector> rows(points.rows());
  for (std::size_t i = 0; i < points.rows(); ++i) {
    rows[i].values.assign(points.row(i).begin(), points.row(i).end());
  }
  return pairwise_matrix(rows, Metric::euclidean, {.band = std::nullopt, .threads = threads});
}

double silhouette(const FeatureMatrix& points, std::span<const int> labels) {
  check_sizes(points, labels);
  return silhouette(labels, euclidean_matrix(points));
}

double calinski_harabasz(const FeatureMatrix& points, std::span<const int> labels) {
  check_sizes(points, labels);
  const std::size_t n = points.rows();
  std::size_t k = 0;
  const auto c = compact(labels, k);
  if (k < 2) throw UndefinedError("calinski_harabasz undefined for a single cluster");

  std::vector<std::size_t> sizes;
  const auto mu = centroids(points, c, k, sizes);
  std::vector<double> overall(points.cols(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < points.cols(); ++j) overall[j] += points(i, j);
  }
  for (double& v : overall) v /= static_cast<double>(n);

  double between = 0.0, within = 0.0;
  for (std::size_t q = 0; q < k; ++q) between += static_cast<double>(sizes[q]) * dist2(mu[q], overall);
  for (std::size_t i = 0; i < n; ++i) within += dist2(points.row(i), mu[c[i]]);

  if (within == 0.0) {
    spdlog::warn("calinski_harabasz: zero within-cluster dispersion, reporting inf");
    return std::numeric_limits<double>::infinity();
  }
  return (between / static_cast<double>(k - 1)) / (within / static_cast<double>(n - k));
}

double davies_bouldin(const FeatureMatrix& points, std::span<const int> labels) {
  check_sizes(points, labels);
  std::size_t k = 0;
  const auto c = compact(labels, k);
  if (k < 2) throw UndefinedError("davies_bouldin undefined for a single cluster");

  std::vector<std::size_t> sizes;
  const auto mu = centroids(points, c, k, sizes);
  std::vector<double> spread(k, 0.0);
  for (std::size_t i = 0; i < points.rows(); ++i) {
    spread[c[i]] += std::sqrt(dist2(points.row(i), mu[c[i]]));
  }
  for (std::size_t q = 0; q < k; ++q) spread[q] /= static_cast<double>(sizes[q]);

  double total = 0.0;
  for (std::size_t a = 0; a < k; ++a) {
    double worst = 0.0;
    for (std::size_t b = 0; b < k; ++b) {
      if (a == b) continue;
      const double sep = std::sqrt(dist2(mu[a], mu[b]));
      if (sep == 0.0) {
        spdlog::warn("davies_bouldin: coincident centroids, reporting inf");
        return std::numeric_limits<double>::infinity();
      }
      worst = std::max(worst, (spread[a] + spread[b]) / sep);
    }
    total += worst;
  }
  return total / static_cast<double>(k);
}

}  // namespace solclust
