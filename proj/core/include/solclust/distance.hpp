#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "solclust/clearsky.hpp"
#include "solclust/ingest.hpp"

namespace solclust {

enum class Metric { euclidean, manhattan, dtw };

std::string to_string(Metric m);
Metric parse_metric(std::string_view s);

/// A day's GHI profile prepared for distance computation.
struct ProfileVector {
  Date date{};
  std::vector<double> values;
  std::string policy_id;

  std::size_t length() const { return values.size(); }
};

enum class ResampleMode {
  full_grid,  // the 1440-minute vector unchanged
  daytime,    // sunrise-to-sunset span resampled onto `points` samples
};

/// Daylight is the minute span where the clear-sky model is positive. Throws
/// DomainError in daytime mode when the day has no daylight or points < 2.
ProfileVector resample_profile(const DayRecord& day, const ClearSkyDay& cs, ResampleMode mode,
                               std::size_t points = 80);

/// Throw DomainError on length mismatch.
double euclidean(std::span<const double> a, std::span<const double> b);
double manhattan(std::span<const double> a, std::span<const double> b);

/// Dynamic time warping with squared-difference local cost and steps
/// (1,0), (0,1), (1,1), anchored at both ends; returns the square root of the
/// minimal accumulated cost. `band` is a Sakoe-Chiba half-width (|i - j| <= band);
/// throws DomainError when band < |len(a) - len(b)| or either series is empty.
double dtw(std::span<const double> a, std::span<const double> b,
           std::optional<std::size_t> band = std::nullopt);

/// Dense symmetric matrix of pairwise day distances.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  DistanceMatrix(Metric metric, std::vector<Date> days);

  std::size_t size() const { return days_.size(); }
  Metric metric() const { return metric_; }
  const std::vector<Date>& days() const { return days_; }

  double operator()(std::size_t i, std::size_t j) const { return values_[i * size() + j]; }
  void set(std::size_t i, std::size_t j, double d);

  /// Row i as a contiguous span.
  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * size(), size()};
  }

  /// Principal submatrix over `indices`, in the given order.
  DistanceMatrix subset(std::span<const std::size_t> indices) const;

  /// Throws DomainError if not symmetric, non-zero diagonal, or a negative or
  /// non-finite entry.
  void validate() const;

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  Metric metric_ = Metric::euclidean;
  std::vector<Date> days_;
  std::vector<double> values_;
};

struct PairwiseOptions {
  std::optional<std::size_t> band;
  unsigned threads = 1;  // 0 selects hardware concurrency
};

/// Computes each unordered pair once. The result does not depend on `threads`.
DistanceMatrix pairwise_matrix(std::span<const ProfileVector> profiles, Metric metric,
                               const PairwiseOptions& options = {});

/// Row/column headers are ISO dates; entries written with 17 significant digits.
void write_matrix_csv(std::ostream& out, const DistanceMatrix& m);
DistanceMatrix read_matrix_csv(std::istream& in, Metric metric);

}  // namespace solclust
