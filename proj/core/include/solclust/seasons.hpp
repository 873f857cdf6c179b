#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "solclust/cluster.hpp"
#include "solclust/features.hpp"
#include "solclust/quality.hpp"

namespace solclust {

enum class Season { winter, transition, summer };

char to_char(Season s);
Season parse_season(std::string_view s);

struct SeasonBoundary {
  Date date{};  // first day carrying the new label
  Season from{};
  Season to{};
};

struct SeasonCalendar {
  std::vector<Date> dates;
  std::vector<Season> labels;      // after smoothing (equal to raw when disabled)
  std::vector<Season> raw_labels;  // straight from K-Means
  std::vector<SeasonBoundary> boundaries;
  QualityScores scores;            // standardized features, raw labels
  std::size_t smoothing_changes = 0;
  std::optional<int> smoothing_window;

  /// Label for a date, or empty when the date is not in the calendar.
  std::optional<Season> at(const Date& d) const;
};

struct SeasonOptions {
  KMeansOptions kmeans;
  std::optional<int> smoothing_window;  // odd width in days; empty disables
};

/// Level-1 clustering on standardized (sunshine_minutes, csi_energy) with
/// k = 3; clusters named S, T, W by descending mean clear-sky energy. Throws
/// DataError when the rows span fewer than 365 calendar days.
SeasonCalendar identify_seasons(std::span<const DayFeatures> features, const SeasonOptions& options);

/// Centered majority vote over `window` consecutive entries; ties keep the
/// original label.
std::vector<Season> majority_smooth(std::span<const Season> labels, int window);

std::vector<SeasonBoundary> find_boundaries(std::span<const Date> dates, std::span<const Season> labels);

/// `date,season`
void write_calendar_csv(std::ostream& out, const SeasonCalendar& cal);
/// Reads `date,season` rows back; scores and raw labels are not restored.
SeasonCalendar read_calendar_csv(std::istream& in);

}  // namespace solclust
