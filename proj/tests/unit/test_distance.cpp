#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "solclust/distance.hpp"
#include "solclust/error.hpp"

using namespace solclust;

namespace {
const Date kDay = fixtures::date("2017-06-01");

std::vector<ProfileVector> random_profiles(std::mt19937_64& rng, std::size_t n, std::size_t len) {
  std::vector<ProfileVector> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({add_days(kDay, static_cast<int>(i)), fixtures::random_series(rng, len, 0, 100), "t"});
  }
  return out;
}
}  // namespace

TEST_CASE("resample_profile") {
  const auto cs = fixtures::half_sine(kDay, 400, 1000, 900);
  std::vector<double> ramp(1440, 0.0);
  for (int m = 400; m < 1000; ++m) ramp[m] = m - 400;
  const DayRecord day = fixtures::full_day(kDay, ramp);

  const auto full = resample_profile(day, cs, ResampleMode::full_grid);
  CHECK(full.length() == 1440);
  CHECK(full.values == ramp);
  CHECK(full.policy_id == "full1440");

  const auto three = resample_profile(day, cs, ResampleMode::daytime, 3);
  REQUIRE(three.length() == 3);
  CHECK(three.values[0] == 0.0);
  CHECK(three.values[1] == doctest::Approx(299.5));
  CHECK(three.values[2] == 599.0);
  CHECK(three.policy_id == "day3");

  const auto sine = resample_profile(fixtures::full_day(kDay, cs.csi), cs, ResampleMode::daytime, 80);
  const double peak = *std::max_element(cs.csi.begin(), cs.csi.end());
  CHECK(*std::max_element(sine.values.begin(), sine.values.end()) >= 0.98 * peak);

  CHECK_THROWS_AS(resample_profile(day, cs, ResampleMode::daytime, 1), DomainError);
  const ClearSkyDay dark{kDay, std::vector<double>(1440, 0.0)};
  CHECK_THROWS_AS(resample_profile(day, dark, ResampleMode::daytime, 80), DomainError);
}

TEST_CASE("euclidean and manhattan") {
  const std::vector<double> z{0, 0}, p{3, 4};
  CHECK(euclidean(z, z) == 0.0);
  CHECK(euclidean(z, p) == 5.0);
  CHECK(manhattan(p, p) == 0.0);
  CHECK(manhattan(z, p) == 7.0);
  CHECK_THROWS_AS(euclidean(z, std::vector<double>{1.0}), DomainError);
  CHECK_THROWS_AS(manhattan(z, std::vector<double>{1.0}), DomainError);

  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    const auto a = fixtures::random_series(rng, 64), b = fixtures::random_series(rng, 64),
               c = fixtures::random_series(rng, 64);
    CHECK(euclidean(a, b) == doctest::Approx(oracle::euclid(a, b)).epsilon(1e-9));
    CHECK(manhattan(a, c) <= manhattan(a, b) + manhattan(b, c) + 1e-12);
  }
}

TEST_CASE("dtw examples") {
  const std::vector<double> z{0, 0, 0}, o{1, 1, 1};
  CHECK(dtw(z, z) == 0.0);
  CHECK(dtw(z, o) == doctest::Approx(std::sqrt(3.0)));
  CHECK(dtw(std::vector<double>{1, 3}, std::vector<double>{1, 2, 3}) == 1.0);
  CHECK(oracle::dtw_enumerate({1, 3}, {1, 2, 3}) == 1.0);
  CHECK_THROWS_AS(dtw(std::vector<double>{}, o), DomainError);
  CHECK_THROWS_AS(dtw(std::vector<double>{1, 2}, std::vector<double>{1, 2, 3, 4}, 1), DomainError);
  CHECK_NOTHROW(dtw(std::vector<double>{1, 2}, std::vector<double>{1, 2, 3, 4}, 2));
}

TEST_CASE("dtw oracle and invariants") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::size_t> len(1, 6);
  for (int t = 0; t < 200; ++t) {
    const auto a = fixtures::random_series(rng, len(rng), -5, 5), b = fixtures::random_series(rng, len(rng), -5, 5);
    REQUIRE(std::abs(dtw(a, b) - oracle::dtw_enumerate(a, b)) <= 1e-12);
    REQUIRE(std::abs(dtw(a, b) - dtw(b, a)) <= 1e-9);
  }
  for (int t = 0; t < 100; ++t) {
    const auto a = fixtures::random_series(rng, 40), b = fixtures::random_series(rng, 40);
    REQUIRE(dtw(a, b) <= euclidean(a, b) + 1e-12);
    double prev = dtw(a, b, 0);
    CHECK(prev == doctest::Approx(euclidean(a, b)).epsilon(1e-12));
    for (std::size_t band = 1; band < 40; ++band) {
      const double d = dtw(a, b, band);
      REQUIRE(d <= prev + 1e-12);
      prev = d;
    }
  }
}

TEST_CASE("pairwise_matrix") {
  std::mt19937_64 rng(23);
  const auto one = random_profiles(rng, 1, 10);
  const auto m1 = pairwise_matrix(one, Metric::euclidean);
  CHECK(m1.size() == 1);
  CHECK(m1(0, 0) == 0.0);

  std::vector<ProfileVector> same(3, one[0]);
  for (int i = 0; i < 3; ++i) same[i].date = add_days(kDay, i);
  const auto m3 = pairwise_matrix(same, Metric::dtw);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(m3(i, j) == 0.0);

  const auto five = random_profiles(rng, 5, 30);
  const auto ed = pairwise_matrix(five, Metric::euclidean);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      CHECK(ed(i, j) == doctest::Approx(oracle::euclid(five[i].values, five[j].values)).epsilon(1e-9));
  CHECK_NOTHROW(ed.validate());
  CHECK(ed.days()[2] == five[2].date);

  const auto many = random_profiles(rng, 40, 50);
  for (Metric metric : {Metric::euclidean, Metric::manhattan, Metric::dtw}) {
    const auto serial = pairwise_matrix(many, metric, {std::nullopt, 1});
    CHECK(serial == pairwise_matrix(many, metric, {std::nullopt, 8}));
    CHECK(serial == pairwise_matrix(many, metric, {std::nullopt, 3}));
  }
}

TEST_CASE("pairwise_matrix reports the failing pair") {
  std::mt19937_64 rng(29);
  auto p = random_profiles(rng, 4, 10);
  p[2].values.resize(9);
  try {
    pairwise_matrix(p, Metric::euclidean, {std::nullopt, 4});
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    const std::string msg = e.what();
    CHECK(msg.find(format_date(p[0].date)) != std::string::npos);
    CHECK(msg.find(format_date(p[2].date)) != std::string::npos);
  }
}

TEST_CASE("distance matrix subset and csv") {
  std::mt19937_64 rng(31);
  const auto p = random_profiles(rng, 6, 12);
  const auto m = pairwise_matrix(p, Metric::dtw, {3, 1});
  const std::vector<std::size_t> idx{4, 1, 3};
  const auto s = m.subset(idx);
  CHECK(s.size() == 3);
  CHECK(s(0, 1) == m(4, 1));
  CHECK(s(2, 0) == m(3, 4));
  CHECK(s.days()[0] == p[4].date);

  std::stringstream io;
  write_matrix_csv(io, m);
  CHECK(read_matrix_csv(io, Metric::dtw) == m);

  DistanceMatrix bad(Metric::euclidean, {kDay, add_days(kDay, 1)});
  bad.set(0, 1, -1.0);
  CHECK_THROWS_AS(bad.validate(), DomainError);
  CHECK(to_string(Metric::dtw) == "dtw");
  CHECK(parse_metric("md") == Metric::manhattan);
}
