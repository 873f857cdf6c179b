#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "solclust/analysis.hpp"
#include "solclust/clearsky.hpp"
#include "solclust/ingest.hpp"
#include "solclust/solar_geometry.hpp"

namespace solclust {

struct KMeansConfig {
  int restarts = 10;
  double tol = 1e-6;
  int max_iter = 300;
  std::uint64_t seed = 42;
};

/// Public measurement endpoint. `url_template` may use {site}, {begin} and
/// {end} (dates as YYYYMMDD); one request per calendar month.
struct FetchConfig {
  std::string site_id;
  std::string url_template;
  std::string first_month = "2015-01";  // YYYY-MM
  std::string last_month = "2018-12";
  int attempts = 3;
  double backoff_seconds = 1.0;
};

struct RunConfig {
  SiteConfig site;
  TurbidityTable turbidity;
  QualityPolicy quality;
  CsvFormat csv;
  std::vector<Method> level2_methods{Method::beta, Method::ed, Method::dtw};
  std::size_t dtw_points = 80;
  std::optional<std::size_t> dtw_band;
  KMeansConfig kmeans;
  std::optional<int> smoothing_window;
  double sunshine_threshold = 0.0;
  unsigned threads = 1;  // 0 selects hardware concurrency
  FetchConfig fetch;

  // io
  std::vector<std::filesystem::path> inputs;  // explicit raw CSV files
  std::filesystem::path data_dir;             // else every *.csv here
  std::filesystem::path out_dir = "out";
  std::filesystem::path cache_dir;            // empty disables the matrix cache

  /// Throws ConfigError.
  void validate() const;
};

/// Built-in defaults for `golden`, `hawaii` or `custom`. Throws ConfigError.
RunConfig site_preset(const std::string& name);

/// Overlays `doc` onto `base`. Unknown keys and ill-typed values throw ConfigError.
RunConfig parse_config(const nlohmann::json& doc, RunConfig base);
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& path, RunConfig base);

/// Full document, every key present.
nlohmann::json to_json(const RunConfig& cfg);

/// The subset that determines results (no io paths, no thread count).
nlohmann::json config_echo(const RunConfig& cfg);

/// Text listing every key and its default, for --help.
std::string describe_defaults();

}  // namespace solclust
