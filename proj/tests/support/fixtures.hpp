#pragma once

#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "solclust/calendar.hpp"
#include "solclust/clearsky.hpp"
#include "solclust/ingest.hpp"

namespace fixtures {

inline std::filesystem::path dir() { return SOLCLUST_FIXTURES_DIR; }

inline solclust::Date date(const char* iso) { return solclust::parse_date(iso); }

inline solclust::SiteConfig golden_site() {
  solclust::SiteConfig s;
  s.name = "custom";
  s.latitude = 39.74;
  s.longitude = -105.18;
  s.elevation = 1828.8;
  s.utc_offset = -7;
  return s;
}

inline solclust::DayRecord full_day(const solclust::Date& d, const std::vector<double>& ghi) {
  solclust::DayRecord r;
  r.date = d;
  r.ghi = ghi;
  r.ghi_availability = 1.0;
  return r;
}

inline solclust::DayRecord constant_day(const solclust::Date& d, double v) {
  return full_day(d, std::vector<double>(solclust::kMinutesPerDay, v));
}

// Half-sine "clear-sky" curve positive on [rise, set).
inline solclust::ClearSkyDay half_sine(const solclust::Date& d, int rise, int set, double peak) {
  solclust::ClearSkyDay cs{d, std::vector<double>(solclust::kMinutesPerDay, 0.0)};
  for (int m = rise; m < set; ++m) {
    cs.csi[m] = peak * std::sin(std::numbers::pi * (m - rise + 0.5) / (set - rise));
  }
  return cs;
}

inline std::vector<double> random_series(std::mt19937_64& rng, std::size_t n, double lo = 0.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

}  // namespace fixtures
