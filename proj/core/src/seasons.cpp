#include "solclust/seasons.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>

#include "solclust/error.hpp"
#include "text.hpp"

namespace solclust {

char to_char(Season s) {
  switch (s) {
    case Season::winter: return 'W';
    case Season::transition: return 'T';
    case Season::summer: return 'S';
  }
  return '?';
}

Season parse_season(std::string_view s) {
  if (s == "W") return Season::winter;
  if (s == "T") return Season::transition;
  if (s == "S") return Season::summer;
  throw FormatError("unknown season '" + std::string(s) + "'");
}

std::optional<Season> SeasonCalendar::at(const Date& d) const {
  const auto it = std::lower_bound(dates.begin(), dates.end(), d);
  if (it == dates.end() || *it != d) return std::nullopt;
  return labels[static_cast<std::size_t>(it - dates.begin())];
}

std::vector<Season> majority_smooth(std::span<const Season> labels, int window) {
  if (window < 1 || window % 2 == 0) throw DomainError("smoothing window must be odd and >= 1");
  const auto n = static_cast<std::ptrdiff_t>(labels.size());
  const std::ptrdiff_t half = window / 2;
  std::vector<Season> out(labels.begin(), labels.end());
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    std::array<int, 3> votes{};
    for (std::ptrdiff_t j = std::max<std::ptrdiff_t>(0, i - half);
         j <= std::min<std::ptrdiff_t>(n - 1, i + half); ++j) {
      ++votes[static_cast<std::size_t>(labels[static_cast<std::size_t>(j)])];
    }
    const int top = *std::max_element(votes.begin(), votes.end());
    const auto own = static_cast<std::size_t>(labels[static_cast<std::size_t>(i)]);
    if (votes[own] == top) continue;
    for (std::size_t s = 0; s < 3; ++s) {
      if (votes[s] == top) {
        out[static_cast<std::size_t>(i)] = static_cast<Season>(s);
        break;
      }
    }
  }
  return out;
}

std::vector<SeasonBoundary> find_boundaries(std::span<const Date> dates, std::span<const Season> labels) {
  std::vector<SeasonBoundary> out;
  for (std::size_t i = 1; i < labels.size(); ++i) {
    if (labels[i] != labels[i - 1]) out.push_back({dates[i], labels[i - 1], labels[i]});
  }
  return out;
}

SeasonCalendar identify_seasons(std::span<const DayFeatures> features, const SeasonOptions& options) {
  if (features.empty()) throw DataError("identify_seasons: no days");
  std::vector<DayFeatures> rows(features.begin(), features.end());
  std::sort(rows.begin(), rows.end(),
            [](const DayFeatures& a, const DayFeatures& b) { return a.date < b.date; });
  const int span = days_between(rows.front().date, rows.back().date) + 1;
  if (span < 365) {
    throw DataError("identify_seasons: input spans " + std::to_string(span) +
                    " days, at least 365 required");
  }

  const std::size_t n = rows.size();
  FeatureMatrix x(n, 2);
  for (std::size_t i = 0; i < n; ++i) {
    x(i, 0) = rows[i].sunshine_minutes;
    x(i, 1) = rows[i].csi_energy;
  }
  for (std::size_t j = 0; j < 2; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += x(i, j);
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) var += (x(i, j) - mean) * (x(i, j) - mean);
    const double sd = std::sqrt(var / static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) x(i, j) = (x(i, j) - mean) / (sd > 0.0 ? sd : 1.0);
  }

  const ClusterAssignment fit = kmeans(x, 3, options.kmeans);

  // Name clusters by descending mean clear-sky energy: S, T, W.
  std::array<double, 3> energy{};
  std::array<std::size_t, 3> count{};
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = static_cast<std::size_t>(fit.labels[i]);
    energy[c] += rows[i].csi_energy;
    ++count[c];
  }
  for (std::size_t c = 0; c < 3; ++c) energy[c] /= static_cast<double>(count[c]);
  std::array<std::size_t, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return energy[a] > energy[b]; });
  std::array<Season, 3> name{};
  name[order[0]] = Season::summer;
  name[order[1]] = Season::transition;
  name[order[2]] = Season::winter;

  SeasonCalendar cal;
  cal.dates.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    cal.dates.push_back(rows[i].date);
    cal.raw_labels.push_back(name[static_cast<std::size_t>(fit.labels[i])]);
  }
  cal.smoothing_window = options.smoothing_window;
  cal.labels = options.smoothing_window ? majority_smooth(cal.raw_labels, *options.smoothing_window)
                                        : cal.raw_labels;
  for (std::size_t i = 0; i < n; ++i) cal.smoothing_changes += cal.labels[i] != cal.raw_labels[i];
  cal.boundaries = find_boundaries(cal.dates, cal.labels);

  std::vector<int> raw(n);
  for (std::size_t i = 0; i < n; ++i) raw[i] = static_cast<int>(cal.raw_labels[i]);
  cal.scores.silhouette = silhouette(x, raw);
  cal.scores.calinski_harabasz = calinski_harabasz(x, raw);
  cal.scores.davies_bouldin = davies_bouldin(x, raw);
  cal.scores.space = "standardized (sunshine_minutes, csi_energy)";
  return cal;
}

void write_calendar_csv(std::ostream& out, const SeasonCalendar& cal) {
  out << "date,season\n";
  for (std::size_t i = 0; i < cal.dates.size(); ++i) {
    out << format_date(cal.dates[i]) << ',' << to_char(cal.labels[i]) << '\n';
  }
}

SeasonCalendar read_calendar_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("season calendar CSV: missing header");
  SeasonCalendar cal;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (detail::trim(line).empty()) continue;
    const auto cells = detail::split_csv(line);
    if (cells.size() != 2) {
      throw FormatError("season calendar CSV: expected 2 columns at row " + std::to_string(row));
    }
    cal.dates.push_back(parse_date(cells[0]));
    cal.labels.push_back(parse_season(cells[1]));
  }
  if (!std::is_sorted(cal.dates.begin(), cal.dates.end())) {
    throw FormatError("season calendar CSV: dates not ascending");
  }
  cal.raw_labels = cal.labels;
  cal.boundaries = find_boundaries(cal.dates, cal.labels);
  return cal;
}

}  // namespace solclust
