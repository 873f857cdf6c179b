#include "solclust/ingest.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>

#include "solclust/error.hpp"
#include "text.hpp"

namespace solclust {

namespace {

constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

std::optional<double> parse_cell(std::string_view cell) {
  cell = detail::trim(cell);
  if (cell.empty()) return std::nullopt;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

bool parse_two_digits(std::string_view s, int& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

// "HH:MM" or "HH:MM:SS"; seconds are truncated onto the minute grid.
bool parse_clock(std::string_view s, int& minute) {
  int h = 0, m = 0;
  if (s.size() != 5 && s.size() != 8) return false;
  if (s[2] != ':' || (s.size() == 8 && s[5] != ':')) return false;
  if (!parse_two_digits(s.substr(0, 2), h) || !parse_two_digits(s.substr(3, 2), m)) return false;
  if (s.size() == 8) {
    int sec = 0;
    if (!parse_two_digits(s.substr(6, 2), sec) || sec < 0 || sec > 59) return false;
  }
  if (h < 0 || h > 23 || m < 0 || m > 59) return false;
  minute = h * 60 + m;
  return true;
}

std::size_t find_column(const std::vector<std::string>& header, const std::string& name) {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) {
    throw FormatError("missing column '" + name + "' in header (row 1)");
  }
  return static_cast<std::size_t>(it - header.begin());
}

// Linear interpolation across interior NaN runs no longer than max_gap.
// Returns the length of the longest interior run left unfilled (0 if none).
int interpolate_interior(std::vector<double>& v, int max_gap) {
  const auto n = static_cast<int>(v.size());
  int longest = 0;
  int i = 0;
  while (i < n && std::isnan(v[i])) ++i;
  while (i < n) {
    if (!std::isnan(v[i])) {
      ++i;
      continue;
    }
    const int start = i;
    while (i < n && std::isnan(v[i])) ++i;
    if (i == n) break;  // trailing run
    const int len = i - start;
    if (len > max_gap) {
      longest = std::max(longest, len);
      continue;
    }
    const double left = v[start - 1];
    const double right = v[i];
    for (int k = 0; k < len; ++k) {
      const double t = static_cast<double>(k + 1) / static_cast<double>(len + 1);
      v[start + k] = left + t * (right - left);
    }
  }
  return longest;
}

void fill_edges(std::vector<double>& v) {
  auto first = std::find_if(v.begin(), v.end(), [](double x) { return !std::isnan(x); });
  if (first == v.end()) return;
  std::fill(v.begin(), first, *first);
  auto last = std::find_if(v.rbegin(), v.rend(), [](double x) { return !std::isnan(x); });
  std::fill(v.rbegin(), last, *last);
}

void drop_negative(std::vector<double>& v) {
  for (double& x : v) {
    if (x < 0.0) x = kMissing;
  }
}

// Pyranometer thermal offset reads slightly negative at night; those minutes
// were measured, so they count as available and become 0.
void clamp_negative(std::vector<double>& v) {
  for (double& x : v) {
    if (x < 0.0) x = 0.0;
  }
}

}  // namespace

void QualityPolicy::validate() const {
  if (!(min_availability > 0.0 && min_availability <= 1.0)) {
    throw DomainError("min_availability must be in (0, 1]");
  }
  if (max_interp_gap < 1) {
    throw DomainError("max_interp_gap must be >= 1");
  }
}

double availability(std::span<const double> values) {
  if (values.empty()) return 0.0;
  const auto present = std::count_if(values.begin(), values.end(),
                                     [](double x) { return std::isfinite(x); });
  return static_cast<double>(present) / static_cast<double>(values.size());
}

std::vector<RawSample> parse_raw_csv(std::istream& in, const CsvFormat& format) {
  std::string line;
  if (!std::getline(in, line)) {
    throw FormatError("empty input: header row required");
  }
  detail::strip_bom(line);
  const auto header = detail::split_csv(line);

  const bool split_time = !format.date_column.empty() || !format.time_column.empty();
  if (split_time && (format.date_column.empty() || format.time_column.empty())) {
    throw FormatError("date_column and time_column must be given together");
  }
  std::size_t ts_col = 0, date_col = 0, time_col = 0;
  if (split_time) {
    date_col = find_column(header, format.date_column);
    time_col = find_column(header, format.time_column);
  } else {
    ts_col = find_column(header, format.timestamp_column);
  }
  const std::size_t ghi_col = find_column(header, format.ghi_column);
  std::optional<std::size_t> cloud_col;
  if (!format.cloud_column.empty()) cloud_col = find_column(header, format.cloud_column);

  std::vector<RawSample> out;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim(line).empty()) continue;
    const auto cells = detail::split_csv(line);
    auto cell = [&](std::size_t col) -> std::string_view {
      return col < cells.size() ? std::string_view(cells[col]) : std::string_view{};
    };

    RawSample s;
    bool ok = false;
    try {
      if (split_time) {
        s.date = parse_date(detail::trim(cell(date_col)));
        ok = parse_clock(detail::trim(cell(time_col)), s.minute);
      } else {
        const auto ts = detail::trim(cell(ts_col));
        if (ts.size() >= 16 && (ts[10] == ' ' || ts[10] == 'T')) {
          s.date = parse_date(ts.substr(0, 10));
          ok = parse_clock(ts.substr(11), s.minute);
        }
      }
    } catch (const FormatError&) {
      ok = false;
    }
    if (!ok) {
      throw FormatError("unparseable timestamp at row " + std::to_string(row) + ": " + line);
    }
    s.ghi = parse_cell(cell(ghi_col));
    if (cloud_col) s.cloud_cover = parse_cell(cell(*cloud_col));
    out.push_back(s);
  }
  return out;
}

std::vector<DayRecord> segment_days(std::vector<RawSample> samples) {
  std::stable_sort(samples.begin(), samples.end(), [](const RawSample& a, const RawSample& b) {
    if (a.date != b.date) return a.date < b.date;
    return a.minute < b.minute;
  });
  const bool has_cloud = std::any_of(samples.begin(), samples.end(),
                                     [](const RawSample& s) { return s.cloud_cover.has_value(); });

  std::vector<DayRecord> days;
  std::size_t duplicates = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const RawSample& s = samples[i];
    if (days.empty() || days.back().date != s.date) {
      DayRecord d;
      d.date = s.date;
      d.ghi.assign(kMinutesPerDay, kMissing);
      if (has_cloud) d.cloud_cover.emplace(kMinutesPerDay, kMissing);
      days.push_back(std::move(d));
    }
    if (i + 1 < samples.size() && samples[i + 1].date == s.date &&
        samples[i + 1].minute == s.minute) {
      ++duplicates;
      continue;  // a later row for the same minute wins
    }
    DayRecord& d = days.back();
    d.ghi[s.minute] = s.ghi.value_or(kMissing);
    if (d.cloud_cover) (*d.cloud_cover)[s.minute] = s.cloud_cover.value_or(kMissing);
  }
  if (duplicates > 0) {
    spdlog::warn("segment_days: {} duplicate timestamps resolved last-wins", duplicates);
  }
  for (DayRecord& d : days) {
    d.ghi_availability = availability(d.ghi);
    if (d.cloud_cover) d.cloud_availability = availability(*d.cloud_cover);
  }
  return days;
}

std::vector<RawSample> flatten(std::span<const DayRecord> days) {
  std::vector<RawSample> out;
  for (const DayRecord& d : days) {
    for (std::size_t m = 0; m < d.ghi.size(); ++m) {
      const bool has_ghi = std::isfinite(d.ghi[m]);
      const bool has_cc = d.cloud_cover && std::isfinite((*d.cloud_cover)[m]);
      if (!has_ghi && !has_cc) continue;
      RawSample s;
      s.date = d.date;
      s.minute = static_cast<int>(m);
      if (has_ghi) s.ghi = d.ghi[m];
      if (has_cc) s.cloud_cover = (*d.cloud_cover)[m];
      out.push_back(s);
    }
  }
  return out;
}

CleanResult clean_day(const DayRecord& day, const QualityPolicy& policy) {
  policy.validate();
  DayRecord out = day;
  clamp_negative(out.ghi);
  out.ghi_availability = availability(out.ghi);
  if (out.cloud_cover) {
    drop_negative(*out.cloud_cover);
    out.cloud_availability = availability(*out.cloud_cover);
  }

  if (out.ghi_availability < policy.min_availability) {
    return Rejection{out.date,
                     detail::format("ghi availability %.4g < %.4g", out.ghi_availability,
                                    policy.min_availability),
                     out.ghi_availability, policy.min_availability};
  }

  const int unfilled = interpolate_interior(out.ghi, policy.max_interp_gap);
  if (unfilled > 0) {
    return Rejection{out.date,
                     detail::format("interior gap of %d min exceeds max_interp_gap %d", unfilled,
                                    policy.max_interp_gap),
                     out.ghi_availability, policy.min_availability};
  }
  fill_edges(out.ghi);
  out.ghi_availability = availability(out.ghi);
  return out;
}

void write_rejections_csv(std::ostream& out, std::span<const Rejection> rejections) {
  out << "date,reason,availability\n";
  for (const Rejection& r : rejections) {
    out << format_date(r.date) << ',' << detail::csv_quote(r.reason) << ','
        << detail::format("%.9g", r.availability) << '\n';
  }
}

}  // namespace solclust
