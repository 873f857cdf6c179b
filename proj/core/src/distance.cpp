#include "solclust/distance.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <istream>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include "solclust/error.hpp"
#include "text.hpp"

namespace solclust {

std::string to_string(Metric m) {
  switch (m) {
    case Metric::euclidean: return "ed";
    case Metric::manhattan: return "md";
    case Metric::dtw: return "dtw";
  }
  return "?";
}

Metric parse_metric(std::string_view s) {
  if (s == "ed") return Metric::euclidean;
  if (s == "md") return Metric::manhattan;
  if (s == "dtw") return Metric::dtw;
  throw DomainError("unknown metric '" + std::string(s) + "'");
}

ProfileVector resample_profile(const DayRecord& day, const ClearSkyDay& cs, ResampleMode mode,
                               std::size_t points) {
  if (mode == ResampleMode::full_grid) {
    return ProfileVector{day.date, day.ghi, "full1440"};
  }
  if (points < 2) throw DomainError("resample_profile: daytime mode needs points >= 2");
  std::size_t first = cs.csi.size(), last = 0;
  for (std::size_t i = 0; i < cs.csi.size(); ++i) {
    if (cs.csi[i] > 0.0) {
      first = std::min(first, i);
      last = i;
    }
  }
  if (first == cs.csi.size()) {
    throw DomainError("resample_profile: no daylight on " + format_date(day.date));
  }
  ProfileVector p{day.date, std::vector<double>(points), "day" + std::to_string(points)};
  const double span = static_cast<double>(last - first);
  for (std::size_t j = 0; j < points; ++j) {
    const double x = static_cast<double>(first) + span * static_cast<double>(j) /
                                                      static_cast<double>(points - 1);
    const auto lo = std::min(static_cast<std::size_t>(x), last);
    const auto hi = std::min(lo + 1, last);
    const double t = x - static_cast<double>(lo);
    p.values[j] = day.ghi[lo] + t * (day.ghi[hi] - day.ghi[lo]);
  }
  return p;
}

double euclidean(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DomainError("euclidean: length mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

double manhattan(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DomainError("manhattan: length mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
  return sum;
}

double dtw(std::span<const double> a, std::span<const double> b, std::optional<std::size_t> band) {
  const std::size_t n = a.size(), m = b.size();
  if (n == 0 || m == 0) throw DomainError("dtw: empty series");
  const std::size_t diff = n > m ? n - m : m - n;
  if (band && *band < diff) {
    throw DomainError("dtw: band " + std::to_string(*band) + " < length difference " +
                      std::to_string(diff));
  }
  const std::size_t w = band.value_or(std::max(n, m));
  constexpr double inf = std::numeric_limits<double>::infinity();

  std::vector<double> prev(m, inf), cur(m, inf);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t jlo = i > w ? i - w : 0;
    const std::size_t jhi = std::min(m - 1, i + w);
    std::fill(cur.begin(), cur.end(), inf);
    for (std::size_t j = jlo; j <= jhi; ++j) {
      const double d = a[i] - b[j];
      const double cost = d * d;
      double best;
      if (i == 0 && j == 0) {
        best = 0.0;
      } else {
        best = inf;
        if (i > 0) best = std::min(best, prev[j]);
        if (j > 0) best = std::min(best, cur[j - 1]);
        if (i > 0 && j > 0) best = std::min(best, prev[j - 1]);
      }
      cur[j] = best + cost;
    }
    std::swap(prev, cur);
  }
  return std::sqrt(prev[m - 1]);
}

DistanceMatrix::DistanceMatrix(Metric metric, std::vector<Date> days)
    : metric_(metric), days_(std::move(days)), values_(days_.size() * days_.size(), 0.0) {}

void DistanceMatrix::set(std::size_t i, std::size_t j, double d) {
  values_[i * size() + j] = d;
  values_[j * size() + i] = d;
}

DistanceMatrix DistanceMatrix::subset(std::span<const std::size_t> indices) const {
  std::vector<Date> days;
  days.reserve(indices.size());
  for (std::size_t i : indices) days.push_back(days_.at(i));
  DistanceMatrix out(metric_, std::move(days));
  for (std::size_t a = 0; a < indices.size(); ++a) {
    for (std::size_t b = 0; b < indices.size(); ++b) {
      out.values_[a * indices.size() + b] = (*this)(indices[a], indices[b]);
    }
  }
  return out;
}

void DistanceMatrix::validate() const {
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    if ((*this)(i, i) != 0.0) throw DomainError("distance matrix: non-zero diagonal");
    for (std::size_t j = 0; j < n; ++j) {
      const double v = (*this)(i, j);
      if (!std::isfinite(v) || v < 0.0) {
        throw DomainError("distance matrix: negative or non-finite entry");
      }
      if (v != (*this)(j, i)) throw DomainError("distance matrix: not symmetric");
    }
  }
}

DistanceMatrix pairwise_matrix(std::span<const ProfileVector> profiles, Metric metric,
                               const PairwiseOptions& options) {
  std::vector<Date> days;
  days.reserve(profiles.size());
  for (const auto& p : profiles) days.push_back(p.date);
  DistanceMatrix out(metric, std::move(days));
  const std::size_t n = profiles.size();

  auto pair_distance = [&](std::size_t i, std::size_t j) {
    const auto& a = profiles[i].values;
    const auto& b = profiles[j].values;
    switch (metric) {
      case Metric::euclidean: return euclidean(a, b);
      case Metric::manhattan: return manhattan(a, b);
      case Metric::dtw: return dtw(a, b, options.band);
    }
    return 0.0;
  };

  unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                          : options.threads;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));

  std::atomic<std::size_t> next_row{0};
  std::mutex error_mutex;
  std::size_t error_pair = std::numeric_limits<std::size_t>::max();
  std::string error_text;

  auto worker = [&] {
    for (std::size_t i = next_row++; i < n; i = next_row++) {
      for (std::size_t j = i + 1; j < n; ++j) {
        try {
          out.set(i, j, pair_distance(i, j));
        } catch (const DomainError& e) {
          std::lock_guard lock(error_mutex);
          const std::size_t key = i * n + j;
          if (key < error_pair) {
            error_pair = key;
            error_text = "pair (" + format_date(profiles[i].date) + ", " +
                         format_date(profiles[j].date) + "): " + e.what();
          }
          return;
        }
      }
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (!error_text.empty()) throw DomainError(error_text);
  return out;
}

void write_matrix_csv(std::ostream& out, const DistanceMatrix& m) {
  out << "date";
  for (const Date& d : m.days()) out << ',' << format_date(d);
  out << '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    out << format_date(m.days()[i]);
    for (std::size_t j = 0; j < m.size(); ++j) out << ',' << detail::exact(m(i, j));
    out << '\n';
  }
}

DistanceMatrix read_matrix_csv(std::istream& in, Metric metric) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("distance matrix CSV: empty");
  detail::strip_bom(line);
  const auto header = detail::split_csv(line);
  if (header.empty()) throw FormatError("distance matrix CSV: bad header");
  std::vector<Date> days;
  for (std::size_t c = 1; c < header.size(); ++c) days.push_back(parse_date(header[c]));
  DistanceMatrix m(metric, days);
  for (std::size_t i = 0; i < days.size(); ++i) {
    if (!std::getline(in, line)) throw FormatError("distance matrix CSV: truncated");
    const auto cells = detail::split_csv(line);
    if (cells.size() != days.size() + 1 || parse_date(cells[0]) != days[i]) {
      throw FormatError("distance matrix CSV: malformed row " + std::to_string(i + 2));
    }
    for (std::size_t j = 0; j < days.size(); ++j) {
      try {
        const double v = std::stod(cells[j + 1]);
        if (j >= i) m.set(i, j, v);
      } catch (const std::logic_error&) {
        throw FormatError("distance matrix CSV: bad number at row " + std::to_string(i + 2));
      }
    }
  }
  m.validate();
  return m;
}

}  // namespace solclust
