#include "solclust/features.hpp"

#include <spdlog/spdlog.h>

#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "solclust/error.hpp"
#include "text.hpp"

namespace solclust {

double trapezoid(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 1; i < values.size(); ++i) sum += 0.5 * (values[i - 1] + values[i]);
  return sum;
}

double beta(const DayRecord& day, const ClearSkyDay& cs) {
  if (day.date != cs.date) throw DataError("beta: date mismatch " + format_date(day.date));
  const double denom = trapezoid(cs.csi);
  if (!(denom > 0.0)) {
    throw UndefinedError("beta undefined: zero clear-sky energy on " + format_date(day.date));
  }
  return trapezoid(day.ghi) / denom;
}

int sunshine_duration(const ClearSkyDay& cs, double threshold) {
  int n = 0;
  for (double v : cs.csi) n += v > threshold ? 1 : 0;
  return n;
}

double csi_energy(const ClearSkyDay& cs) { return trapezoid(cs.csi) / 60000.0; }

std::vector<bool> daytime_mask(const ClearSkyDay& cs) {
  std::vector<bool> mask(cs.csi.size());
  for (std::size_t i = 0; i < cs.csi.size(); ++i) mask[i] = cs.csi[i] > 0.0;
  return mask;
}

std::optional<double> mean_cloud_cover(const DayRecord& day, const std::vector<bool>& daytime,
                                       double min_availability) {
  if (!day.cloud_cover) return std::nullopt;
  if (day.cloud_availability.value_or(availability(*day.cloud_cover)) < min_availability) {
    return std::nullopt;
  }
  const auto& cc = *day.cloud_cover;
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < cc.size() && i < daytime.size(); ++i) {
    if (daytime[i] && std::isfinite(cc[i])) {
      sum += cc[i];
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

void zero_night(DayRecord& day, const ClearSkyDay& cs) {
  for (std::size_t i = 0; i < day.ghi.size() && i < cs.csi.size(); ++i) {
    if (cs.csi[i] <= 0.0) day.ghi[i] = 0.0;
  }
}

FeatureTable feature_table(std::span<const DayRecord> days, std::span<const ClearSkyDay> clearsky,
                           const QualityPolicy& policy, double sunshine_threshold) {
  if (days.size() != clearsky.size()) {
    throw DataError("feature_table: " + std::to_string(days.size()) + " days but " +
                    std::to_string(clearsky.size()) + " clear-sky days");
  }
  FeatureTable table;
  for (std::size_t i = 0; i < days.size(); ++i) {
    if (days[i].date != clearsky[i].date) {
      throw DataError("feature_table: day " + format_date(days[i].date) +
                      " paired with clear-sky day " + format_date(clearsky[i].date));
    }
    CleanResult cleaned = clean_day(days[i], policy);
    if (auto* r = std::get_if<Rejection>(&cleaned)) {
      spdlog::info("rejected {}: {}", format_date(r->date), r->reason);
      table.rejections.push_back(std::move(*r));
      continue;
    }
    DayRecord day = std::get<DayRecord>(std::move(cleaned));
    const ClearSkyDay& cs = clearsky[i];
    if (!(trapezoid(cs.csi) > 0.0)) {
      table.rejections.push_back({day.date, "zero clear-sky energy", day.ghi_availability,
                                  policy.min_availability});
      continue;
    }
    zero_night(day, cs);

    DayFeatures f;
    f.date = day.date;
    f.beta = beta(day, cs);
    f.sunshine_minutes = sunshine_duration(cs, sunshine_threshold);
    f.csi_energy = csi_energy(cs);
    f.mean_cloud_cover = mean_cloud_cover(day, daytime_mask(cs), policy.min_availability);
    table.rows.push_back(f);
    table.days.push_back(std::move(day));
  }
  return table;
}

void write_features_csv(std::ostream& out, std::span<const DayFeatures> rows) {
  out << "date,beta,sunshine_minutes,csi_energy_kwhm2,mean_cloud_cover\n";
  for (const DayFeatures& f : rows) {
    out << format_date(f.date) << ',' << detail::exact(f.beta) << ','
        << detail::exact(f.sunshine_minutes) << ',' << detail::exact(f.csi_energy) << ',';
    if (f.mean_cloud_cover) out << detail::exact(*f.mean_cloud_cover);
    out << '\n';
  }
}

std::vector<DayFeatures> read_features_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("features CSV: missing header");
  std::vector<DayFeatures> rows;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (detail::trim(line).empty()) continue;
    const auto cells = detail::split_csv(line);
    if (cells.size() != 5) {
      throw FormatError("features CSV: expected 5 columns at row " + std::to_string(row));
    }
    try {
      DayFeatures f;
      f.date = parse_date(cells[0]);
      f.beta = std::stod(cells[1]);
      f.sunshine_minutes = std::stod(cells[2]);
      f.csi_energy = std::stod(cells[3]);
      if (!cells[4].empty()) f.mean_cloud_cover = std::stod(cells[4]);
      rows.push_back(f);
    } catch (const std::logic_error&) {
      throw FormatError("features CSV: bad number at row " + std::to_string(row));
    }
  }
  return rows;
}

}  // namespace solclust
