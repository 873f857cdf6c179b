#include "solclust/clearsky.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "solclust/error.hpp"
#include "text.hpp"

namespace solclust {

namespace {

constexpr std::array<int, 12> kDaysInMonth{31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};

// Month midpoints on a 365-day year, in days since Jan 1 00:00.
constexpr std::array<double, 12> month_midpoints() {
  std::array<double, 12> mid{};
  double start = 0.0;
  for (std::size_t i = 0; i < 12; ++i) {
    mid[i] = start + kDaysInMonth[i] / 2.0;
    start += kDaysInMonth[i];
  }
  return mid;
}

constexpr auto kMidpoints = month_midpoints();

void check_turbidity(double tl) {
  if (!(tl >= 1.0 && tl <= 10.0)) throw DomainError("Linke turbidity must be in [1, 10]");
}

}  // namespace

TurbidityTable::TurbidityTable() { monthly_.fill(3.0); }

TurbidityTable::TurbidityTable(const std::array<double, 12>& monthly) : monthly_(monthly) {
  for (double tl : monthly_) check_turbidity(tl);
}

TurbidityTable TurbidityTable::constant(double tl) {
  std::array<double, 12> m{};
  m.fill(tl);
  return TurbidityTable(m);
}

double TurbidityTable::at(const LocalTime& t) const {
  // Leap years are squeezed onto the 365-day midpoint grid.
  const double frac = (day_of_year(t.date) - 1 + t.minutes / 1440.0) * 365.0 / days_in_year(t.date);
  std::size_t hi = 0;
  while (hi < 12 && kMidpoints[hi] <= frac) ++hi;
  double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;
  if (hi == 0) {
    x0 = kMidpoints[11] - 365.0;
    y0 = monthly_[11];
    x1 = kMidpoints[0];
    y1 = monthly_[0];
  } else if (hi == 12) {
    x0 = kMidpoints[11];
    y0 = monthly_[11];
    x1 = kMidpoints[0] + 365.0;
    y1 = monthly_[0];
  } else {
    x0 = kMidpoints[hi - 1];
    y0 = monthly_[hi - 1];
    x1 = kMidpoints[hi];
    y1 = monthly_[hi];
  }
  return y0 + (frac - x0) / (x1 - x0) * (y1 - y0);
}

double clearsky_ghi(const LocalTime& t, const SiteConfig& site, double tl) {
  check_turbidity(tl);
  const SolarPosition pos = solar_position(t, site);
  const auto am = airmass(pos.zenith, site.elevation);
  if (!am) return 0.0;

  const double h = site.elevation;
  const double cg1 = 5.09e-5 * h + 0.868;
  const double cg2 = 3.92e-5 * h + 0.0387;
  const double fh1 = std::exp(-h / 8000.0);
  const double fh2 = std::exp(-h / 1250.0);
  const double i0 = extraterrestrial_normal(day_of_year(t.date));
  const double cos_z = std::cos(pos.zenith * std::numbers::pi / 180.0);

  const double ghi = cg1 * i0 * cos_z * std::exp(-cg2 * *am * (fh1 + fh2 * (tl - 1.0))) *
                     std::exp(0.01 * std::pow(*am, 1.8));
  return std::max(0.0, ghi);
}

ClearSkyDay clearsky_day(const Date& date, const SiteConfig& site, const TurbidityTable& table) {
  ClearSkyDay day{date, std::vector<double>(kMinutesPerDay)};
  for (std::size_t m = 0; m < kMinutesPerDay; ++m) {
    const LocalTime t{date, static_cast<double>(m) + 0.5};
    day.csi[m] = clearsky_ghi(t, site, table.at(t));
  }
  return day;
}

void write_clearsky_csv(std::ostream& out, std::span<const ClearSkyDay> days) {
  out << "date,minute,csi_wm2\n";
  for (const ClearSkyDay& d : days) {
    const std::string date = format_date(d.date);
    for (std::size_t m = 0; m < d.csi.size(); ++m) {
      out << date << ',' << m << ',' << detail::format("%.9g", d.csi[m]) << '\n';
    }
  }
}

}  // namespace solclust
