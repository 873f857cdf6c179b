#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "solclust/clearsky.hpp"
#include "solclust/error.hpp"
#include "solclust/features.hpp"
#include "solclust/solar_geometry.hpp"

using namespace solclust;

namespace {

// Minimum zenith over the day and the minute it occurs at.
std::pair<double, double> noon(const Date& d, const SiteConfig& s) {
  double best = 1e9, at = 0;
  for (double m = 0.5; m < 1440; m += 1.0) {
    const double z = solar_position({d, m}, s).zenith;
    if (z < best) best = z, at = m;
  }
  return {best, at};
}

SiteConfig site(double lat, double lon, double elev, double offset) {
  SiteConfig s;
  s.latitude = lat;
  s.longitude = lon;
  s.elevation = elev;
  s.utc_offset = offset;
  return s;
}

}  // namespace

TEST_CASE("solar_position examples") {
  CHECK(noon(fixtures::date("2017-03-20"), site(0, 0, 0, 0)).first <= 1.0);
  const auto g = noon(fixtures::date("2017-06-21"), fixtures::golden_site());
  CHECK(std::abs(g.first - 16.3) <= 0.5);
  // pvlib SPA at 12:02:30 local gives 16.3075
  CHECK(std::abs(solar_position({fixtures::date("2017-06-21"), 722.5}, fixtures::golden_site()).zenith - 16.3075) < 0.3);
  for (const auto& s : {fixtures::golden_site(), site(19.72, -156.05, 4, -10), site(-33.9, 151.2, 0, 10)}) {
    // local solar midnight is about 12 h from solar noon
    const auto n = noon(fixtures::date("2017-06-21"), s);
    const double midnight = std::fmod(n.second + 720.0, 1440.0);
    CHECK(solar_position({fixtures::date("2017-06-21"), midnight}, s).zenith > 90.0);
  }
}

TEST_CASE("solar_position domain and fields") {
  const auto s = fixtures::golden_site();
  CHECK_THROWS_AS(solar_position({fixtures::date("1949-12-31"), 600}, s), DomainError);
  CHECK_THROWS_AS(solar_position({fixtures::date("2101-01-01"), 600}, s), DomainError);
  SiteConfig bad = s;
  bad.latitude = 91;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = s;
  bad.elevation = -500;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  for (int doy = 0; doy < 365; doy += 7) {
    const auto p = solar_position({add_days(fixtures::date("2017-01-01"), doy), 600}, s);
    CHECK(p.earth_sun_factor >= 0.966);
    CHECK(p.earth_sun_factor <= 1.0345);  // perihelion gives 1.03426
    CHECK(p.azimuth >= 0.0);
    CHECK(p.azimuth < 360.0);
    CHECK(p.elevation() + p.zenith == doctest::Approx(90.0));
  }
}

TEST_CASE("solar_position continuity") {
  const auto s = fixtures::golden_site();
  for (const char* iso : {"2017-01-15", "2017-06-21", "2017-09-30"}) {
    double prev = solar_position({fixtures::date(iso), 0.0}, s).zenith;
    for (double m = 1; m < 1440; m += 1) {
      const double z = solar_position({fixtures::date(iso), m}, s).zenith;
      REQUIRE(std::abs(z - prev) < 0.3);
      prev = z;
    }
  }
}

// Six calendar months is only a declination mirror near the solstices and
// equinoxes; in Feb/Apr/Aug/Oct eccentricity leaves up to ~1.6 deg.
TEST_CASE("solar_position hemisphere symmetry at solar noon") {
  for (unsigned month : {3u, 6u, 9u, 12u}) {
    const Date d{std::chrono::year{2017}, std::chrono::month{month}, std::chrono::day{21}};
    const Date shifted = (std::chrono::year_month{d.year(), d.month()} + std::chrono::months{6}) / d.day();
    const double north = noon(d, site(35, 0, 0, 0)).first;
    const double south = noon(shifted, site(-35, 0, 0, 0)).first;
    INFO("month " << month);
    CHECK(std::abs(north - south) < 1.0);
  }
}

TEST_CASE("airmass") {
  CHECK(*airmass(0, 0) == doctest::Approx(1.0).epsilon(0.001));
  CHECK_FALSE(airmass(90, 0).has_value());
  CHECK_FALSE(airmass(120, 0).has_value());
  // Kasten-Young evaluated by hand: 1 / (0.5 + 0.50572 * 36.07995^-1.6364)
  const double ky = 1.0 / (0.5 + 0.50572 * std::pow(96.07995 - 60.0, -1.6364));
  CHECK(*airmass(60, 0) == doctest::Approx(ky).epsilon(1e-12));
  CHECK(std::abs(*airmass(60, 0) - 1.994) < 0.01);
  CHECK(*airmass(60, 1828.8) == doctest::Approx(ky * std::exp(-1828.8 / 8434.5)));
  double prev = 0;
  for (double z = 0; z < 90; z += 0.5) {
    const double am = *airmass(z, 0);
    REQUIRE(am > prev);
    prev = am;
  }
}

TEST_CASE("extraterrestrial irradiance") {
  CHECK(std::abs(extraterrestrial_ghi(100, 90)) < 1e-9);
  CHECK(extraterrestrial_ghi(100, 120) == 0.0);
  CHECK(std::abs(extraterrestrial_ghi(1, 0) - 1405.9) < 1.0);
  CHECK(std::abs(extraterrestrial_ghi(182, 0) - 1316.3) < 1.0);
  CHECK(std::abs(extraterrestrial_normal(366) / extraterrestrial_normal(1) - 1.0) < 0.002);
}

TEST_CASE("clear-sky examples against pvlib values") {
  // pvlib 0.15.2 ineichen (perez enhancement), SPA zenith, tl 3
  const double golden = clearsky_ghi({fixtures::date("2017-06-21"), 722.5}, fixtures::golden_site(), 3.0);
  CHECK(std::abs(golden - 1089.577) < 5.0);
  const double equator = clearsky_ghi({fixtures::date("2017-03-20"), 727.5}, site(0, 0, 0, 0), 3.0);
  CHECK(equator > 800.0);
  CHECK(equator < 1150.0);
  CHECK(std::abs(equator - 1069.874) < 5.0);
  CHECK(clearsky_ghi({fixtures::date("2017-06-21"), 60.5}, fixtures::golden_site(), 3.0) == 0.0);
  CHECK_THROWS_AS(clearsky_ghi({fixtures::date("2017-06-21"), 720}, fixtures::golden_site(), 0.5), DomainError);
  CHECK_THROWS_AS(clearsky_ghi({fixtures::date("2017-06-21"), 720}, fixtures::golden_site(), 11), DomainError);
}

TEST_CASE("clear-sky monotonicity") {
  const auto s = fixtures::golden_site();
  for (double m = 420.5; m < 1140; m += 37) {
    const LocalTime t{fixtures::date("2017-04-10"), m};
    if (clearsky_ghi(t, s, 1.0) <= 0) continue;
    double prev = 1e9;
    for (double tl = 1.0; tl <= 10.0; tl += 0.5) {
      const double g = clearsky_ghi(t, s, tl);
      REQUIRE(g < prev);
      prev = g;
    }
  }
  // same zenith (same place and time), higher elevation. Near the horizon the
  // exp(0.01 AM^1.8) term favours the longer sea-level path, so only zenith < 65.
  SiteConfig low = s, high = s;
  low.elevation = 0;
  int checked = 0;
  for (double m = 420.5; m < 1140; m += 13) {
    const LocalTime t{fixtures::date("2017-04-10"), m};
    if (solar_position(t, s).zenith >= 65.0) continue;
    ++checked;
    for (double tl = 1.0; tl <= 8.0; tl += 1.0) CHECK(clearsky_ghi(t, high, tl) >= clearsky_ghi(t, low, tl));
  }
  CHECK(checked > 20);
}

TEST_CASE("clearsky_day shape") {
  const auto polar = clearsky_day(fixtures::date("2017-12-21"), site(80, 0, 0, 0), TurbidityTable{});
  for (double v : polar.csi) REQUIRE(v == 0.0);

  const auto june = clearsky_day(fixtures::date("2017-06-21"), fixtures::golden_site(), TurbidityTable{});
  REQUIRE(june.csi.size() == kMinutesPerDay);
  const auto peak = std::max_element(june.csi.begin(), june.csi.end()) - june.csi.begin();
  const double solar_noon = noon(fixtures::date("2017-06-21"), fixtures::golden_site()).second;
  CHECK(std::abs(peak - solar_noon) <= 90);
  // unimodal with at most 1 W/m^2 ripple
  for (long m = 1; m < peak; ++m) REQUIRE(june.csi[m] >= june.csi[m - 1] - 1.0);
  for (long m = peak + 1; m < 1440; ++m) REQUIRE(june.csi[m] <= june.csi[m - 1] + 1.0);
  // zero exactly when the sun is down at the sample time
  for (std::size_t m = 0; m < kMinutesPerDay; ++m) {
    const double z = solar_position({june.date, m + 0.5}, fixtures::golden_site()).zenith;
    REQUIRE((june.csi[m] == 0.0) == (z >= 90.0));
  }
}

TEST_CASE("turbidity table") {
  CHECK_THROWS_AS(TurbidityTable::constant(0.5), DomainError);
  std::array<double, 12> m{};
  for (int i = 0; i < 12; ++i) m[i] = 2.0 + i * 0.25;
  const TurbidityTable t(m);
  // mid-January and mid-July hit the table values
  CHECK(t.at({fixtures::date("2017-01-16"), 720}) == doctest::Approx(2.0).epsilon(0.01));
  CHECK(t.at({fixtures::date("2017-07-16"), 720}) == doctest::Approx(3.5).epsilon(0.01));
  // periodic wrap between December and January midpoints
  const double ny = t.at({fixtures::date("2017-01-01"), 0});
  CHECK(ny > 2.0);
  CHECK(ny < 4.75);
}

TEST_CASE("clear-sky oracle fixture") {
  std::ifstream in(fixtures::dir() / "clearsky_reference.csv");
  REQUIRE(in);
  std::string line;
  std::getline(in, line);
  double sq = 0, worst = 0;
  int n = 0;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string f[9];
    for (auto& x : f) std::getline(ss, x, ',');
    SiteConfig s = site(std::stod(f[0]), std::stod(f[1]), std::stod(f[2]), std::stod(f[3]));
    const double g = clearsky_ghi({parse_date(f[4]), std::stod(f[5])}, s, std::stod(f[6]));
    const double e = g - std::stod(f[8]);
    sq += e * e;
    worst = std::max(worst, std::abs(e));
    ++n;
  }
  CHECK(n == 1000);
  MESSAGE("rms " << std::sqrt(sq / n) << " max " << worst);
  CHECK(std::sqrt(sq / n) < 5.0);
  CHECK(worst < 15.0);
}

TEST_CASE("clearsky csv export") {
  std::ostringstream out;
  const std::vector<ClearSkyDay> days{fixtures::half_sine(fixtures::date("2017-01-01"), 400, 1000, 500)};
  write_clearsky_csv(out, days);
  const std::string s = out.str();
  CHECK(s.rfind("date,minute,csi_wm2\n", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == 1441);
}
