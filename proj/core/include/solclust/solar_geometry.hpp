#pragma once

#include <optional>
#include <string>

#include "solclust/calendar.hpp"

namespace solclust {

struct SiteConfig {
  std::string name = "custom";
  double latitude = 0.0;   // degrees, [-90, 90]
  double longitude = 0.0;  // degrees, [-180, 180], east positive
  double elevation = 0.0;  // metres above sea level
  double utc_offset = 0.0; // hours, fixed (no daylight saving)

  /// Throws DomainError when a field is out of range.
  void validate() const;
};

struct SolarPosition {
  double zenith = 0.0;            // degrees, [0, 180]
  double azimuth = 0.0;           // degrees clockwise from north, [0, 360)
  double earth_sun_factor = 1.0;  // (mean distance / actual distance)^2

  double elevation() const { return 90.0 - zenith; }
};

/// NOAA solar-calculator equations (Meeus low-precision series): declination,
/// equation of time and hour angle. No refraction correction.
/// Valid for 1950-2100; throws DomainError outside.
SolarPosition solar_position(const LocalTime& t, const SiteConfig& site);

/// Kasten-Young (1989) relative airmass scaled by exp(-elevation / 8434.5).
/// Empty when the sun is at or below the horizon.
std::optional<double> airmass(double zenith_deg, double elevation_m);

inline constexpr double kSolarConstant = 1361.1;  // W/m^2

/// Normal-incidence extraterrestrial irradiance, 1361.1 * (1 + 0.033 cos(2 pi doy / 365)).
double extraterrestrial_normal(int doy);

/// Horizontal extraterrestrial irradiance, clamped at 0.
double extraterrestrial_ghi(int doy, double zenith_deg);

}  // namespace solclust
