#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "solclust/calendar.hpp"

namespace solclust {

/// One row of a raw logger file. Missing cells are empty optionals.
struct RawSample {
  Date date{};
  int minute = 0;  // minute of day, [0, 1440)
  std::optional<double> ghi;
  std::optional<double> cloud_cover;
};

/// Column mapping for raw CSV input.
///
/// Either `timestamp_column` (`YYYY-MM-DD HH:MM`, `T` separator accepted) or the
/// pair `date_column` + `time_column` (date as `YYYY-MM-DD` or `MM/DD/YYYY`,
/// time as `HH:MM`) locates each row in time.
struct CsvFormat {
  std::string timestamp_column = "timestamp";
  std::string date_column;
  std::string time_column;
  std::string ghi_column = "ghi";
  std::string cloud_column;  // empty: no cloud channel
};

/// One civil day on the minute grid. Missing minutes hold NaN.
struct DayRecord {
  Date date{};
  std::vector<double> ghi;                         // kMinutesPerDay entries
  std::optional<std::vector<double>> cloud_cover;  // kMinutesPerDay entries
  double ghi_availability = 0.0;
  std::optional<double> cloud_availability;
};

struct QualityPolicy {
  double min_availability = 0.9;
  int max_interp_gap = 60;  // minutes

  /// Throws DomainError when out of range.
  void validate() const;
};

/// A day dropped by the quality gate. Not an error.
struct Rejection {
  Date date{};
  std::string reason;
  double availability = 0.0;
  double threshold = 0.0;
};

using CleanResult = std::variant<DayRecord, Rejection>;

/// Throws FormatError on a bad header or an unparseable timestamp. Numeric cells
/// that fail to parse become missing values.
std::vector<RawSample> parse_raw_csv(std::istream& in, const CsvFormat& format);

/// Groups samples into civil days. Duplicate minutes keep the last sample.
std::vector<DayRecord> segment_days(std::vector<RawSample> samples);

/// Inverse of segment_days for fully populated days; NaN slots are skipped.
std::vector<RawSample> flatten(std::span<const DayRecord> days);

CleanResult clean_day(const DayRecord& day, const QualityPolicy& policy);

/// Fraction of finite entries.
double availability(std::span<const double> values);

void write_rejections_csv(std::ostream& out, std::span<const Rejection> rejections);

}  // namespace solclust
