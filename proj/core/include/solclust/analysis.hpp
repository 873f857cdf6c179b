#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "solclust/cluster.hpp"
#include "solclust/seasons.hpp"

namespace solclust {

enum class Level { high, medium, low };
enum class Method { beta, ed, dtw };

char to_char(Level l);
Level parse_level(std::string_view s);
std::string to_string(Method m);
Method parse_method(std::string_view s);

inline constexpr std::array<Season, 3> kSeasons{Season::winter, Season::transition, Season::summer};
inline constexpr std::array<Level, 3> kLevels{Level::high, Level::medium, Level::low};
inline constexpr std::array<Method, 3> kMethods{Method::beta, Method::ed, Method::dtw};

struct LabeledDay {
  Date date{};
  Season season{};
  Level level{};
  Method method{};
  double beta = 0.0;
};

/// Per-day season and level for one or more methods.
using LabeledCalendar = std::vector<LabeledDay>;

/// Orders the k = 3 clusters by descending mean member beta into H, M, L. A
/// tie in mean falls back to descending max beta, then lowest cluster index.
std::vector<Level> assign_levels(const ClusterAssignment& assignment, std::span<const double> betas);

struct BetaRange {
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 0;
};

using RangeKey = std::tuple<Season, Level, Method>;
using BetaRanges = std::map<RangeKey, BetaRange>;

BetaRanges beta_ranges(const LabeledCalendar& calendar);

/// True when any two populated levels' [min, max] intervals intersect for
/// this season and method.
bool ranges_overlap(const BetaRanges& ranges, Season season, Method method);

/// Elementwise mean over members' 1440-minute profiles. Throws DomainError when empty.
std::vector<double> mean_profile(std::span<const std::vector<double>* const> members);

/// Row-normalized 3x3 counts, indexed [reference][method] in H, M, L order.
struct ConfusionMatrix {
  std::array<std::array<std::size_t, 3>, 3> counts{};
  std::array<std::array<double, 3>, 3> fractions{};
};

struct DatedLevel {
  Date date{};
  Level level{};
};

/// Both sequences must cover the same dates (in any order); throws DomainError otherwise.
ConfusionMatrix confusion(std::span<const DatedLevel> reference, std::span<const DatedLevel> method);

struct TransitionMatrix {
  Season season{};
  std::array<std::array<std::size_t, 3>, 3> counts{};  // [from][to]
  std::array<std::array<double, 3>, 3> probabilities{};
};

/// Counts (d, d + 1) pairs where both days carry the given season and method.
TransitionMatrix transitions(const LabeledCalendar& calendar, Season season, Method method);

}  // namespace solclust
