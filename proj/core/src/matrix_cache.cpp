#include "solclust/matrix_cache.hpp"

#include <spdlog/spdlog.h>

#include <fstream>

#include "solclust/digest.hpp"
#include "solclust/error.hpp"

namespace solclust {

std::string MatrixCache::key(std::span<const ProfileVector> profiles, Metric metric,
                             const PairwiseOptions& options) {
  Sha256 h;
  std::string policy = profiles.empty() ? "none" : profiles.front().policy_id;
  for (const auto& p : profiles) {
    h.update(format_date(p.date));
    h.update(p.values.data(), p.values.size() * sizeof(double));
  }
  const std::string band = options.band ? std::to_string(*options.band) : "inf";
  return to_string(metric) + "_" + policy + "_band" + band + "_" + h.hex().substr(0, 16);
}

DistanceMatrix MatrixCache::get_or_compute(std::span<const ProfileVector> profiles, Metric metric,
                                           const PairwiseOptions& options) {
  if (dir_.empty()) {
    ++misses_;
    return pairwise_matrix(profiles, metric, options);
  }
  const auto path = dir_ / (key(profiles, metric, options) + ".csv");
  if (std::filesystem::exists(path)) {
    std::ifstream in(path);
    try {
      DistanceMatrix m = read_matrix_csv(in, metric);
      if (m.size() == profiles.size()) {
        ++hits_;
        return m;
      }
    } catch (const Error& e) {
      spdlog::warn("matrix cache: discarding {}: {}", path.string(), e.what());
    }
  }
  ++misses_;
  DistanceMatrix m = pairwise_matrix(profiles, metric, options);
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw IoError("cannot write " + tmp);
    write_matrix_csv(out, m);
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot write " + path.string() + ": " + ec.message());
  return m;
}

}  // namespace solclust
