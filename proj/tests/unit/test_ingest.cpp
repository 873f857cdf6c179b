#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "solclust/error.hpp"
#include "solclust/ingest.hpp"

using namespace solclust;

TEST_CASE("calendar helpers") {
  const Date d = fixtures::date("2016-03-01");
  CHECK(day_of_year(d) == 61);
  CHECK(is_leap(d));
  CHECK(days_in_year(fixtures::date("2017-01-01")) == 365);
  CHECK(format_date(add_days(d, -1)) == "2016-02-29");
  CHECK(days_between(fixtures::date("2015-01-01"), fixtures::date("2019-01-01")) == 1461);
  CHECK(parse_date("02/17/2017") == fixtures::date("2017-02-17"));
  CHECK_THROWS_AS(parse_date("2017-13-01"), FormatError);
  CHECK_THROWS_AS(parse_date("yesterday"), FormatError);
}

TEST_CASE("parse_raw_csv maps fields") {
  CsvFormat fmt;
  fmt.cloud_column = "cc";
  std::istringstream in("timestamp,ghi,cc\n2017-02-17 08:00,120.5,93\n");
  const auto rows = parse_raw_csv(in, fmt);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].date == fixtures::date("2017-02-17"));
  CHECK(rows[0].minute == 480);
  CHECK(*rows[0].ghi == 120.5);
  CHECK(*rows[0].cloud_cover == 93.0);
}

TEST_CASE("parse_raw_csv missing values and edge cases") {
  CsvFormat fmt;
  SUBCASE("NaN cell") {
    std::istringstream in("timestamp,ghi\n2017-02-17T08:01,NaN\n2017-02-17 08:02,\n");
    const auto rows = parse_raw_csv(in, fmt);
    REQUIRE(rows.size() == 2);
    CHECK_FALSE(rows[0].ghi.has_value());
    CHECK_FALSE(rows[1].ghi.has_value());
  }
  SUBCASE("header only") {
    std::istringstream in("timestamp,ghi\n");
    CHECK(parse_raw_csv(in, fmt).empty());
  }
  SUBCASE("missing column") {
    std::istringstream in("time,ghi\n2017-02-17 08:00,1\n");
    CHECK_THROWS_AS(parse_raw_csv(in, fmt), FormatError);
  }
  SUBCASE("bad timestamp names the line") {
    std::istringstream in("timestamp,ghi\n2017-02-17 08:00,1\nnot-a-time,2\n");
    try {
      parse_raw_csv(in, fmt);
      FAIL("expected FormatError");
    } catch (const FormatError& e) {
      CHECK(std::string(e.what()).find("not-a-time") != std::string::npos);
    }
  }
  SUBCASE("separate date and time columns") {
    CsvFormat mdc;
    mdc.timestamp_column.clear();
    mdc.date_column = "DATE (MM/DD/YYYY)";
    mdc.time_column = "MST";
    mdc.ghi_column = "Global CMP22 (vent/cor) [W/m^2]";
    std::istringstream in("DATE (MM/DD/YYYY),MST,Global CMP22 (vent/cor) [W/m^2]\n06/21/2017,12:30,1010.2\n");
    const auto rows = parse_raw_csv(in, mdc);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].minute == 750);
    CHECK(*rows[0].ghi == doctest::Approx(1010.2));
  }
}

TEST_CASE("segment_days") {
  std::vector<RawSample> samples;
  const Date d1 = fixtures::date("2017-01-02"), d0 = fixtures::date("2017-01-01");
  for (int m = 0; m < 1440; ++m) samples.push_back({d1, m, 1.0, std::nullopt});
  for (int m = 0; m < 720; ++m) samples.push_back({d0, m, 2.0, std::nullopt});
  samples.push_back({d0, 5, 7.0, std::nullopt});  // duplicate, wins
  const auto days = segment_days(samples);
  REQUIRE(days.size() == 2);
  CHECK(days[0].date == d0);
  CHECK(days[0].ghi_availability == doctest::Approx(0.5));
  CHECK(days[0].ghi[5] == 7.0);
  CHECK(std::isnan(days[0].ghi[800]));
  CHECK(days[1].ghi_availability == 1.0);
  CHECK_FALSE(days[1].cloud_cover.has_value());

  SUBCASE("flatten round trip") {
    const std::vector<DayRecord> full{days[1]};
    const auto again = segment_days(flatten(full));
    REQUIRE(again.size() == 1);
    CHECK(again[0].ghi == days[1].ghi);
  }
}

TEST_CASE("clean_day rules") {
  const QualityPolicy policy;
  const Date d = fixtures::date("2017-05-01");

  SUBCASE("availability below threshold rejects with figures") {
    DayRecord r = fixtures::constant_day(d, 100.0);
    for (int m = 0; m < 216; ++m) r.ghi[m * 6] = NAN;  // 0.85 available
    const auto out = clean_day(r, policy);
    REQUIRE(std::holds_alternative<Rejection>(out));
    const auto& rej = std::get<Rejection>(out);
    CHECK(rej.availability == doctest::Approx(0.85));
    CHECK(rej.threshold == 0.9);
    CHECK(rej.reason.find("0.85 < 0.9") != std::string::npos);
  }
  SUBCASE("single gap interpolates to midpoint") {
    DayRecord r = fixtures::constant_day(d, 0.0);
    r.ghi[600] = 100;
    r.ghi[601] = NAN;
    r.ghi[602] = 200;
    const auto out = clean_day(r, policy);
    REQUIRE(std::holds_alternative<DayRecord>(out));
    CHECK(std::get<DayRecord>(out).ghi[601] == 150.0);
  }
  SUBCASE("negative cloud cover becomes missing, day kept") {
    DayRecord r = fixtures::constant_day(d, 50.0);
    r.cloud_cover = std::vector<double>(1440, 40.0);
    (*r.cloud_cover)[700] = -5.0;
    const auto out = clean_day(r, policy);
    REQUIRE(std::holds_alternative<DayRecord>(out));
    const auto& c = std::get<DayRecord>(out);
    CHECK(std::isnan((*c.cloud_cover)[700]));
    CHECK(*c.cloud_availability == doctest::Approx(1439.0 / 1440.0));
  }
  SUBCASE("negative ghi clamps to zero") {
    DayRecord r = fixtures::constant_day(d, -0.7);
    r.ghi[700] = 300;
    const auto out = clean_day(r, policy);
    REQUIRE(std::holds_alternative<DayRecord>(out));
    CHECK(std::get<DayRecord>(out).ghi[0] == 0.0);
    CHECK(std::get<DayRecord>(out).ghi_availability == 1.0);
  }
  SUBCASE("edges filled with nearest value") {
    DayRecord r = fixtures::constant_day(d, 10.0);
    for (int m = 0; m < 30; ++m) r.ghi[m] = NAN;
    for (int m = 1420; m < 1440; ++m) r.ghi[m] = NAN;
    r.ghi[30] = 4.0;
    r.ghi[1419] = 6.0;
    const auto c = std::get<DayRecord>(clean_day(r, policy));
    CHECK(c.ghi[0] == 4.0);
    CHECK(c.ghi[1439] == 6.0);
  }
  SUBCASE("interior gap longer than max_interp_gap rejects") {
    DayRecord r = fixtures::constant_day(d, 10.0);
    for (int m = 500; m < 600; ++m) r.ghi[m] = NAN;
    const auto out = clean_day(r, policy);
    REQUIRE(std::holds_alternative<Rejection>(out));
    CHECK(std::get<Rejection>(out).reason.find("gap") != std::string::npos);
  }
  SUBCASE("policy validation") {
    CHECK_THROWS_AS(clean_day(fixtures::constant_day(d, 1), QualityPolicy{0.0, 60}), DomainError);
    CHECK_THROWS_AS(clean_day(fixtures::constant_day(d, 1), QualityPolicy{0.9, 0}), DomainError);
  }
}

TEST_CASE("clean_day properties on random days") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0, 1);
  for (int t = 0; t < 50; ++t) {
    DayRecord r = fixtures::full_day(fixtures::date("2017-05-01"), fixtures::random_series(rng, 1440, -5, 900));
    for (int g = 0; g < 6; ++g) {
      const int start = static_cast<int>(u(rng) * 1400), len = 1 + static_cast<int>(u(rng) * 30);
      for (int m = start; m < std::min(1440, start + len); ++m) r.ghi[m] = NAN;
    }
    const auto once = clean_day(r, {});
    if (auto* c = std::get_if<DayRecord>(&once)) {
      for (double v : c->ghi) REQUIRE((std::isfinite(v) && v >= 0.0));
      const auto twice = clean_day(*c, {});
      REQUIRE(std::holds_alternative<DayRecord>(twice));
      CHECK(std::get<DayRecord>(twice).ghi == c->ghi);
    }
    // lowering the threshold never rejects what a higher one kept
    const bool kept_high = std::holds_alternative<DayRecord>(clean_day(r, {0.95, 60}));
    const bool kept_low = std::holds_alternative<DayRecord>(clean_day(r, {0.5, 60}));
    CHECK((!kept_high || kept_low));
  }
}

TEST_CASE("availability") {
  const std::vector<double> v{1, NAN, 2, NAN};
  CHECK(availability(v) == 0.5);
}

TEST_CASE("rejections csv") {
  std::ostringstream out;
  const std::vector<Rejection> r{{fixtures::date("2017-01-05"), "ghi availability 0.5 < 0.9", 0.5, 0.9}};
  write_rejections_csv(out, r);
  CHECK(out.str() == "date,reason,availability\n2017-01-05,ghi availability 0.5 < 0.9,0.5\n");
}
