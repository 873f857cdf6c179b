#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "solclust/clearsky.hpp"
#include "solclust/ingest.hpp"

namespace solclust {

/// Per-day scalars driving both clustering levels.
struct DayFeatures {
  Date date{};
  double beta = 0.0;             // measured / clear-sky daily energy
  double sunshine_minutes = 0.0; // minutes with clear-sky GHI above threshold
  double csi_energy = 0.0;       // kWh/m^2
  std::optional<double> mean_cloud_cover;  // percent
};

/// Trapezoidal integral on a unit-spaced grid.
double trapezoid(std::span<const double> values);

/// Ratio of the trapezoidal day integrals of measured and clear-sky GHI. Not
/// clamped at 1. Throws UndefinedError when the clear-sky integral is zero.
double beta(const DayRecord& day, const ClearSkyDay& cs);

int sunshine_duration(const ClearSkyDay& cs, double threshold = 0.0);

/// Daily clear-sky energy in kWh/m^2 (W min / m^2 divided by 60 000).
double csi_energy(const ClearSkyDay& cs);

/// Minutes with the sun above the horizon according to the clear-sky model.
std::vector<bool> daytime_mask(const ClearSkyDay& cs);

/// Mean cloud cover over daytime minutes. Empty when the day has no cloud
/// channel, its cloud availability is below `min_availability`, or no daytime
/// minute carries a value.
std::optional<double> mean_cloud_cover(const DayRecord& day, const std::vector<bool>& daytime,
                                       double min_availability = 0.0);

/// Sets measured GHI to zero wherever the clear-sky model is zero.
void zero_night(DayRecord& day, const ClearSkyDay& cs);

struct FeatureTable {
  std::vector<DayFeatures> rows;
  std::vector<DayRecord> days;  // cleaned, aligned with rows
  std::vector<Rejection> rejections;
};

/// Cleans, night-masks and reduces each day. `days` and `clearsky` are paired
/// by position; a date mismatch throws DataError. Rejected days are reported,
/// not thrown.
FeatureTable feature_table(std::span<const DayRecord> days, std::span<const ClearSkyDay> clearsky,
                           const QualityPolicy& policy, double sunshine_threshold = 0.0);

/// `date,beta,sunshine_minutes,csi_energy_kwhm2,mean_cloud_cover`
void write_features_csv(std::ostream& out, std::span<const DayFeatures> rows);
std::vector<DayFeatures> read_features_csv(std::istream& in);

}  // namespace solclust
