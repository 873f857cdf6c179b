#include "solclust/solar_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "solclust/error.hpp"

namespace solclust {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

double wrap360(double x) {
  x = std::fmod(x, 360.0);
  return x < 0.0 ? x + 360.0 : x;
}

double julian_day(const LocalTime& t, double utc_offset) {
  const auto unix_days = std::chrono::sys_days{t.date}.time_since_epoch().count();
  return 2440587.5 + static_cast<double>(unix_days) + t.minutes / 1440.0 - utc_offset / 24.0;
}

}  // namespace

void SiteConfig::validate() const {
  if (!(latitude >= -90.0 && latitude <= 90.0)) throw DomainError("latitude out of [-90, 90]");
  if (!(longitude >= -180.0 && longitude <= 180.0)) {
    throw DomainError("longitude out of [-180, 180]");
  }
  if (!(elevation >= -430.0) || !std::isfinite(elevation)) {
    throw DomainError("elevation must be >= -430 m");
  }
  if (!(utc_offset >= -14.0 && utc_offset <= 14.0)) throw DomainError("utc_offset out of range");
}

SolarPosition solar_position(const LocalTime& t, const SiteConfig& site) {
  const int year = static_cast<int>(t.date.year());
  if (!t.date.ok() || year < 1950 || year > 2100) {
    throw DomainError("solar_position: date outside 1950-2100");
  }
  const double jc = (julian_day(t, site.utc_offset) - 2451545.0) / 36525.0;

  const double mean_long = wrap360(280.46646 + jc * (36000.76983 + jc * 0.0003032));
  const double mean_anom = 357.52911 + jc * (35999.05029 - 0.0001537 * jc);
  const double ecc = 0.016708634 - jc * (0.000042037 + 0.0000001267 * jc);
  const double m = mean_anom * kDeg;
  const double center = std::sin(m) * (1.914602 - jc * (0.004817 + 0.000014 * jc)) +
                        std::sin(2 * m) * (0.019993 - 0.000101 * jc) + std::sin(3 * m) * 0.000289;
  const double true_long = mean_long + center;
  const double true_anom = mean_anom + center;
  const double radius =
      (1.000001018 * (1 - ecc * ecc)) / (1 + ecc * std::cos(true_anom * kDeg));
  const double omega = (125.04 - 1934.136 * jc) * kDeg;
  const double app_long = true_long - 0.00569 - 0.00478 * std::sin(omega);
  const double mean_obliq =
      23.0 + (26.0 + (21.448 - jc * (46.815 + jc * (0.00059 - jc * 0.001813))) / 60.0) / 60.0;
  const double obliq = (mean_obliq + 0.00256 * std::cos(omega)) * kDeg;
  const double decl = std::asin(std::sin(obliq) * std::sin(app_long * kDeg));

  const double y = std::pow(std::tan(obliq / 2.0), 2);
  const double l0 = mean_long * kDeg;
  const double eot_min =
      4.0 / kDeg *
      (y * std::sin(2 * l0) - 2 * ecc * std::sin(m) + 4 * ecc * y * std::sin(m) * std::cos(2 * l0) -
       0.5 * y * y * std::sin(4 * l0) - 1.25 * ecc * ecc * std::sin(2 * m));

  const double true_solar = std::fmod(
      std::fmod(t.minutes + eot_min + 4.0 * site.longitude - 60.0 * site.utc_offset, 1440.0) +
          1440.0,
      1440.0);
  const double hour_angle = true_solar / 4.0 < 0.0 ? true_solar / 4.0 + 180.0
                                                   : true_solar / 4.0 - 180.0;

  const double lat = site.latitude * kDeg;
  const double cos_z = std::clamp(std::sin(lat) * std::sin(decl) +
                                      std::cos(lat) * std::cos(decl) * std::cos(hour_angle * kDeg),
                                  -1.0, 1.0);
  const double zenith = std::acos(cos_z);

  double azimuth = 0.0;
  const double denom = std::cos(lat) * std::sin(zenith);
  if (std::abs(denom) > 1e-12) {
    const double a = std::acos(
        std::clamp((std::sin(lat) * std::cos(zenith) - std::sin(decl)) / denom, -1.0, 1.0)) / kDeg;
    azimuth = hour_angle > 0.0 ? wrap360(a + 180.0) : wrap360(540.0 - a);
  }
  return SolarPosition{zenith / kDeg, azimuth, 1.0 / (radius * radius)};
}

std::optional<double> airmass(double zenith_deg, double elevation_m) {
  if (zenith_deg >= 90.0) return std::nullopt;
  const double relative =
      1.0 / (std::cos(zenith_deg * kDeg) + 0.50572 * std::pow(96.07995 - zenith_deg, -1.6364));
  return relative * std::exp(-elevation_m / 8434.5);
}

double extraterrestrial_normal(int doy) {
  return kSolarConstant * (1.0 + 0.033 * std::cos(2.0 * std::numbers::pi * doy / 365.0));
}

double extraterrestrial_ghi(int doy, double zenith_deg) {
  return std::max(0.0, extraterrestrial_normal(doy) * std::cos(zenith_deg * kDeg));
}

}  // namespace solclust
