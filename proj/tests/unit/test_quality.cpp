#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "solclust/error.hpp"
#include "solclust/quality.hpp"

using namespace solclust;

namespace {
const std::vector<int> kAABB{0, 0, 1, 1};

FeatureMatrix col(std::vector<double> v) { return FeatureMatrix::column(v); }
}  // namespace

TEST_CASE("hand cases") {
  CHECK(silhouette(col({0, 0, 10, 10}), kAABB) == 1.0);
  // a = 1, b = 10.5 or 9.5
  const double hand = ((1 - 1 / 10.5) + (1 - 1 / 9.5)) / 2;
  CHECK(silhouette(col({0, 1, 10, 11}), kAABB) == doctest::Approx(hand).epsilon(1e-12));
  CHECK(std::abs(silhouette(col({0, 1, 10, 11}), kAABB) - 0.8997) < 1e-3);
  CHECK(std::abs(calinski_harabasz(col({0, 1, 10, 11}), kAABB) - 200.0) < 1e-9);
  CHECK(std::abs(davies_bouldin(col({0, 1, 10, 11}), kAABB) - 0.1) < 1e-9);
}

TEST_CASE("degenerate cases") {
  CHECK_THROWS_AS(silhouette(col({0, 1, 2}), std::vector<int>{0, 0, 0}), UndefinedError);
  CHECK_THROWS_AS(calinski_harabasz(col({0, 1, 2}), std::vector<int>{0, 0, 0}), DomainError);
  CHECK_THROWS_AS(davies_bouldin(col({0, 1, 2}), std::vector<int>{0, 0, 0}), DomainError);
  // k = n: W = 0
  CHECK(std::isinf(calinski_harabasz(col({0, 1, 2}), std::vector<int>{0, 1, 2})));
  // identical point sets in both clusters: B = 0, coincident centroids
  CHECK(calinski_harabasz(col({0, 4, 0, 4}), std::vector<int>{0, 0, 1, 1}) == 0.0);
  CHECK(std::isinf(davies_bouldin(col({0, 4, 0, 4}), std::vector<int>{0, 0, 1, 1})));
  // zero-variance separated clusters
  CHECK(davies_bouldin(col({0, 0, 10, 10}), kAABB) == 0.0);
  // singleton contributes 0
  CHECK(silhouette(col({0, 1, 10}), std::vector<int>{0, 0, 1}) ==
        doctest::Approx(((1 - 1 / 10.0) + (1 - 1 / 9.0)) / 3));
}

TEST_CASE("structure sanity") {
  std::mt19937_64 rng(211);
  std::normal_distribution<double> g(0, 0.01);
  std::uniform_int_distribution<int> lab(0, 2);
  FeatureMatrix blob(90, 2);
  std::vector<int> random_labels(90);
  for (std::size_t i = 0; i < 90; ++i) blob(i, 0) = g(rng), blob(i, 1) = g(rng), random_labels[i] = lab(rng);
  CHECK(std::abs(silhouette(blob, random_labels)) < 0.2);

  std::vector<double> bands;
  std::vector<int> labels;
  std::uniform_real_distribution<double> u(0, 1);
  for (int c = 0; c < 3; ++c)
    for (int i = 0; i < 30; ++i) bands.push_back(c * 10 + u(rng)), labels.push_back(c);
  const auto pts = col(bands);
  CHECK(silhouette(pts, labels) > 0.8);
  CHECK(davies_bouldin(pts, labels) < 0.3);

  std::vector<int> mixed(labels.size());
  for (auto& l : mixed) l = lab(rng) % 2;
  CHECK(davies_bouldin(pts, mixed) > 1.0);
}

TEST_CASE("invariances") {
  std::mt19937_64 rng(223);
  std::normal_distribution<double> g(0, 1);
  std::uniform_int_distribution<int> lab(0, 2);
  for (int t = 0; t < 20; ++t) {
    FeatureMatrix pts(30, 3);
    std::vector<int> labels(30);
    for (std::size_t i = 0; i < 30; ++i) {
      labels[i] = static_cast<int>(i % 3);
      for (std::size_t j = 0; j < 3; ++j) pts(i, j) = g(rng) + 2.0 * labels[i];
    }
    const double s = silhouette(pts, labels), ch = calinski_harabasz(pts, labels), db = davies_bouldin(pts, labels);

    std::vector<int> perm(labels);
    for (int& l : perm) l = (l + 1) % 3;
    CHECK(silhouette(pts, perm) == doctest::Approx(s).epsilon(1e-12));
    CHECK(calinski_harabasz(pts, perm) == doctest::Approx(ch).epsilon(1e-12));
    CHECK(davies_bouldin(pts, perm) == doctest::Approx(db).epsilon(1e-12));

    FeatureMatrix moved(pts), scaled(pts);
    for (std::size_t i = 0; i < 30; ++i)
      for (std::size_t j = 0; j < 3; ++j) moved(i, j) += 17.0 - 3.0 * j, scaled(i, j) *= 4.5;
    CHECK(std::abs(silhouette(moved, labels) - s) < 1e-9);
    CHECK(std::abs(calinski_harabasz(moved, labels) - ch) < 1e-9 * ch);
    CHECK(std::abs(davies_bouldin(moved, labels) - db) < 1e-9);
    CHECK(calinski_harabasz(scaled, labels) == doctest::Approx(ch).epsilon(1e-9));

    CHECK(std::abs(silhouette(labels, euclidean_matrix(pts)) - s) < 1e-9);
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < 30; ++i) rows.emplace_back(pts.row(i).begin(), pts.row(i).end());
    CHECK(std::abs(oracle::silhouette(rows, labels) - s) < 1e-9);
    CHECK(euclidean_matrix(pts, 1) == euclidean_matrix(pts, 4));
  }
}
