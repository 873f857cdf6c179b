#pragma once

#include <chrono>
#include <cstddef>
#include <string>
#include <string_view>

namespace solclust {

/// Civil date in the site's fixed-offset local time.
using Date = std::chrono::year_month_day;

inline constexpr std::size_t kMinutesPerDay = 1440;

/// Local civil time with sub-minute resolution. `minutes` is in [0, 1440).
struct LocalTime {
  Date date{};
  double minutes = 0.0;
};

/// Parses `YYYY-MM-DD` or `MM/DD/YYYY`. Throws FormatError.
Date parse_date(std::string_view text);

/// ISO `YYYY-MM-DD`.
std::string format_date(const Date& d);

int day_of_year(const Date& d);
bool is_leap(const Date& d);
int days_in_year(const Date& d);

Date add_days(const Date& d, int n);

/// Signed number of days from `a` to `b`.
int days_between(const Date& a, const Date& b);

}  // namespace solclust
