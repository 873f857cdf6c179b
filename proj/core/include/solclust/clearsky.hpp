#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <vector>

#include "solclust/calendar.hpp"
#include "solclust/solar_geometry.hpp"

namespace solclust {

/// Monthly Linke turbidity, interpolated linearly and periodically between
/// month midpoints.
class TurbidityTable {
 public:
  TurbidityTable();  // all 3.0
  explicit TurbidityTable(const std::array<double, 12>& monthly);

  static TurbidityTable constant(double tl);

  const std::array<double, 12>& monthly() const { return monthly_; }

  /// Turbidity at a fractional day of year (0 = Jan 1 00:00).
  double at(const LocalTime& t) const;

 private:
  std::array<double, 12> monthly_;
};

struct ClearSkyDay {
  Date date{};
  std::vector<double> csi;  // kMinutesPerDay values, W/m^2
};

/// Ineichen-Perez clear-sky GHI, W/m^2. Zero with the sun at or below the
/// horizon. Throws DomainError unless 1 <= tl <= 10.
double clearsky_ghi(const LocalTime& t, const SiteConfig& site, double tl);

/// Evaluates clearsky_ghi at each minute midpoint (hh:mm:30).
ClearSkyDay clearsky_day(const Date& date, const SiteConfig& site, const TurbidityTable& table);

/// Audit export, `date,minute,csi_wm2`.
void write_clearsky_csv(std::ostream& out, std::span<const ClearSkyDay> days);

}  // namespace solclust
