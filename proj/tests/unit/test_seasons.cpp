#include <doctest.h>

#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "solclust/error.hpp"
#include "solclust/seasons.hpp"

using namespace solclust;

namespace {

// Three flat bands over the year: S on [150, 245), T on [60, 150) and
// [245, 335), W elsewhere.
Season band_of(int doy) {
  if (doy >= 150 && doy < 245) return Season::summer;
  if ((doy >= 60 && doy < 150) || (doy >= 245 && doy < 335)) return Season::transition;
  return Season::winter;
}

std::vector<DayFeatures> banded_years(int years, std::uint64_t seed, double noise = 0.02) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0, noise);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<DayFeatures> out;
  const Date first = fixtures::date("2015-01-01");
  for (int i = 0; i < 365 * years; ++i) {
    const Date d = add_days(first, i);
    const Season s = band_of(day_of_year(d) - 1);
    const double level = s == Season::summer ? 2.0 : s == Season::transition ? 1.0 : 0.0;
    out.push_back({d, u(rng), 560 + 160 * level + 160 * g(rng), 2.8 + 3.0 * level + 3.0 * g(rng), std::nullopt});
  }
  return out;
}

}  // namespace

TEST_CASE("flat bands give contiguous seasons at the band edges") {
  const auto f = banded_years(2, 1);
  const auto cal = identify_seasons(f, {});
  REQUIRE(cal.labels.size() == f.size());
  for (std::size_t i = 0; i < f.size(); ++i) REQUIRE(cal.labels[i] == band_of(day_of_year(f[i].date) - 1));
  CHECK(cal.smoothing_changes == 0);
  // per year W->T, T->S, S->T, T->W; the year wrap stays in W
  CHECK(cal.boundaries.size() == 8);
  CHECK(cal.boundaries[0].date == fixtures::date("2015-03-02"));
  CHECK(cal.boundaries[0].from == Season::winter);
  CHECK(cal.boundaries[0].to == Season::transition);
  CHECK(cal.scores.silhouette > 0.8);
  CHECK(*cal.at(fixtures::date("2015-06-21")) == Season::summer);
  CHECK(*cal.at(fixtures::date("2015-12-21")) == Season::winter);
  CHECK_FALSE(cal.at(fixtures::date("2019-01-01")).has_value());
}

TEST_CASE("smoothing removes isolated flips within half a window of the edges") {
  auto f = banded_years(1, 2);
  // plant isolated outliers inside summer and winter
  for (int i : {170, 200}) f[i].sunshine_minutes = 560, f[i].csi_energy = 2.8;
  f[20].sunshine_minutes = 880;
  f[20].csi_energy = 8.8;
  const int window = 15;
  const auto cal = identify_seasons(f, {.kmeans = {}, .smoothing_window = window});
  CHECK(cal.smoothing_changes > 0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const int doy = day_of_year(f[i].date) - 1;
    bool near_edge = false;
    for (int e : {60, 150, 245, 335}) near_edge |= std::abs(doy - e) <= window / 2;
    if (!near_edge) CHECK(cal.labels[i] == band_of(doy));
  }
  CHECK(cal.boundaries.size() <= 6);
}

TEST_CASE("identify_seasons preconditions and invariants") {
  auto f = banded_years(1, 3);
  f.resize(300);
  CHECK_THROWS_AS(identify_seasons(f, {}), DataError);
  CHECK_THROWS_AS(identify_seasons({}, {}), DataError);

  // labels depend only on clear-sky features
  auto a = banded_years(2, 4), b = a;
  for (auto& r : b) r.beta = 1.0 - r.beta, r.mean_cloud_cover = 50.0;
  CHECK(identify_seasons(a, {}).labels == identify_seasons(b, {}).labels);

  // naming does not depend on the seed (cluster indices)
  CHECK(identify_seasons(a, {.kmeans = {.seed = 1}}).labels == identify_seasons(a, {.kmeans = {.seed = 999}}).labels);
}

TEST_CASE("year-on-year stability on periodic input") {
  const auto f = banded_years(3, 5, 0.08);
  const auto cal = identify_seasons(f, {});
  int agree = 0;
  for (int i = 0; i < 365; ++i) agree += cal.labels[i] == cal.labels[i + 365] && cal.labels[i] == cal.labels[i + 730];
  CHECK(agree >= 0.9 * 365);
}

TEST_CASE("majority_smooth") {
  using enum Season;
  const std::vector<Season> s{winter, winter, summer, winter, winter};
  CHECK(majority_smooth(s, 3) == std::vector<Season>(5, winter));
  CHECK(majority_smooth(s, 1) == s);
  // tie keeps the original label
  const std::vector<Season> tie{winter, summer, transition};
  CHECK(majority_smooth(tie, 3) == tie);
  CHECK_THROWS_AS(majority_smooth(s, 4), DomainError);
  CHECK_THROWS_AS(majority_smooth(s, 0), DomainError);
}

TEST_CASE("calendar csv and season names") {
  const auto cal = identify_seasons(banded_years(1, 6), {});
  std::stringstream io;
  write_calendar_csv(io, cal);
  CHECK(io.str().rfind("date,season\n2015-01-01,W\n", 0) == 0);
  const auto back = read_calendar_csv(io);
  CHECK(back.dates == cal.dates);
  CHECK(back.labels == cal.labels);
  CHECK(back.boundaries.size() == cal.boundaries.size());
  CHECK(to_char(Season::transition) == 'T');
  CHECK(parse_season("S") == Season::summer);
  CHECK_THROWS_AS(parse_season("X"), FormatError);
}
