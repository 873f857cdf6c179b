#include "solclust/analysis.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <limits>

#include "solclust/error.hpp"

namespace solclust {

char to_char(Level l) {
  switch (l) {
    case Level::high: return 'H';
    case Level::medium: return 'M';
    case Level::low: return 'L';
  }
  return '?';
}

Level parse_level(std::string_view s) {
  if (s == "H") return Level::high;
  if (s == "M") return Level::medium;
  if (s == "L") return Level::low;
  throw FormatError("unknown level '" + std::string(s) + "'");
}

std::string to_string(Method m) {
  switch (m) {
    case Method::beta: return "beta";
    case Method::ed: return "ed";
    case Method::dtw: return "dtw";
  }
  return "?";
}

Method parse_method(std::string_view s) {
  if (s == "beta") return Method::beta;
  if (s == "ed") return Method::ed;
  if (s == "dtw") return Method::dtw;
  throw DomainError("unknown method '" + std::string(s) + "'");
}

std::vector<Level> assign_levels(const ClusterAssignment& assignment, std::span<const double> betas) {
  if (assignment.k != 3) throw DomainError("assign_levels: k must be 3");
  if (assignment.labels.size() != betas.size()) {
    throw DomainError("assign_levels: label and beta counts differ");
  }
  struct Stat {
    double sum = 0.0;
    double max = -std::numeric_limits<double>::infinity();
    std::size_t n = 0;
    double mean() const { return n ? sum / static_cast<double>(n) : -std::numeric_limits<double>::infinity(); }
  };
  std::array<Stat, 3> stat{};
  for (std::size_t i = 0; i < betas.size(); ++i) {
    Stat& s = stat.at(static_cast<std::size_t>(assignment.labels[i]));
    s.sum += betas[i];
    s.max = std::max(s.max, betas[i]);
    ++s.n;
  }
  std::array<std::size_t, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (stat[a].mean() != stat[b].mean()) return stat[a].mean() > stat[b].mean();
    if (stat[a].max != stat[b].max) return stat[a].max > stat[b].max;
    return a < b;
  });
  for (std::size_t r = 1; r < 3; ++r) {
    if (stat[order[r - 1]].mean() == stat[order[r]].mean()) {
      spdlog::info("assign_levels: clusters {} and {} tie on mean beta", order[r - 1], order[r]);
    }
  }
  std::array<Level, 3> level{};
  for (std::size_t r = 0; r < 3; ++r) level[order[r]] = kLevels[r];

  std::vector<Level> out(betas.size());
  for (std::size_t i = 0; i < betas.size(); ++i) {
    out[i] = level[static_cast<std::size_t>(assignment.labels[i])];
  }
  return out;
}

BetaRanges beta_ranges(const LabeledCalendar& calendar) {
  BetaRanges out;
  for (const LabeledDay& d : calendar) {
    auto [it, inserted] = out.try_emplace(RangeKey{d.season, d.level, d.method},
                                          BetaRange{d.beta, d.beta, 0});
    BetaRange& r = it->second;
    r.min = std::min(r.min, d.beta);
    r.max = std::max(r.max, d.beta);
    ++r.count;
  }
  return out;
}

bool ranges_overlap(const BetaRanges& ranges, Season season, Method method) {
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = a + 1; b < 3; ++b) {
      const auto ia = ranges.find({season, kLevels[a], method});
      const auto ib = ranges.find({season, kLevels[b], method});
      if (ia == ranges.end() || ib == ranges.end()) continue;
      if (ia->second.min <= ib->second.max && ib->second.min <= ia->second.max) return true;
    }
  }
  return false;
}

std::vector<double> mean_profile(std::span<const std::vector<double>* const> members) {
  if (members.empty()) throw DomainError("mean_profile: no members");
  std::vector<double> out(members.front()->size(), 0.0);
  for (const auto* p : members) {
    if (p->size() != out.size()) throw DomainError("mean_profile: profile length mismatch");
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += (*p)[i];
  }
  for (double& v : out) v /= static_cast<double>(members.size());
  return out;
}

namespace {

template <typename Matrix>
void normalize_rows(const std::array<std::array<std::size_t, 3>, 3>& counts, Matrix& out) {
  for (std::size_t r = 0; r < 3; ++r) {
    std::size_t total = 0;
    for (std::size_t c = 0; c < 3; ++c) total += counts[r][c];
    for (std::size_t c = 0; c < 3; ++c) {
      out[r][c] = total ? static_cast<double>(counts[r][c]) / static_cast<double>(total) : 0.0;
    }
  }
}

}  // namespace

ConfusionMatrix confusion(std::span<const DatedLevel> reference, std::span<const DatedLevel> method) {
  auto by_date = [](std::span<const DatedLevel> s) {
    std::vector<DatedLevel> v(s.begin(), s.end());
    std::sort(v.begin(), v.end(), [](const DatedLevel& a, const DatedLevel& b) { return a.date < b.date; });
    return v;
  };
  const auto ref = by_date(reference);
  const auto got = by_date(method);
  if (ref.size() != got.size()) throw DomainError("confusion: day sets differ in size");
  ConfusionMatrix m;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    if (ref[i].date != got[i].date) {
      throw DomainError("confusion: day sets differ at " + format_date(ref[i].date));
    }
    ++m.counts[static_cast<std::size_t>(ref[i].level)][static_cast<std::size_t>(got[i].level)];
  }
  normalize_rows(m.counts, m.fractions);
  return m;
}

TransitionMatrix transitions(const LabeledCalendar& calendar, Season season, Method method) {
  std::vector<const LabeledDay*> days;
  for (const LabeledDay& d : calendar) {
    if (d.method == method) days.push_back(&d);
  }
  std::sort(days.begin(), days.end(),
            [](const LabeledDay* a, const LabeledDay* b) { return a->date < b->date; });
  TransitionMatrix t;
  t.season = season;
  for (std::size_t i = 1; i < days.size(); ++i) {
    const LabeledDay& a = *days[i - 1];
    const LabeledDay& b = *days[i];
    if (days_between(a.date, b.date) != 1) continue;
    if (a.season != season || b.season != season) continue;
    ++t.counts[static_cast<std::size_t>(a.level)][static_cast<std::size_t>(b.level)];
  }
  normalize_rows(t.counts, t.probabilities);
  return t;
}

}  // namespace solclust
