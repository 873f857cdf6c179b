#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "solclust/analysis.hpp"
#include "solclust/config.hpp"
#include "solclust/features.hpp"
#include "solclust/matrix_cache.hpp"
#include "solclust/quality.hpp"
#include "solclust/seasons.hpp"

namespace solclust {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kVersion = "0.1.0";

struct InputFile {
  std::string name;  // file name only, so reports do not depend on the checkout path
  std::string sha256;
};

/// Cleaned days with their clear-sky curves and features, all index-aligned.
struct PreparedDays {
  std::vector<InputFile> inputs;
  std::size_t days_total = 0;
  std::vector<DayRecord> days;
  std::vector<ClearSkyDay> clearsky;
  std::vector<DayFeatures> features;
  std::vector<Rejection> rejections;

  std::vector<double> betas(std::span<const std::size_t> members) const;
};

/// Raw input paths: `inputs` if given, else every *.csv under `data_dir`, sorted.
std::vector<std::filesystem::path> resolve_inputs(const RunConfig& cfg);

std::vector<DayRecord> load_days(const RunConfig& cfg, std::vector<InputFile>* provenance = nullptr);

/// Clear-sky curves for each date (parallel over `threads`; order preserved).
std::vector<ClearSkyDay> clearsky_days(std::span<const Date> dates, const RunConfig& cfg);

/// Load, clean, night-mask and reduce every input day.
PreparedDays prepare_days(const RunConfig& cfg);

SeasonCalendar run_seasons(std::span<const DayFeatures> features, const RunConfig& cfg);

/// One level-2 (or all-season) clustering.
struct Level2Run {
  std::optional<Season> season;  // empty for the all-season run
  Method method = Method::beta;
  std::vector<std::size_t> members;  // indices into PreparedDays
  ClusterAssignment assignment;
  QualityScores scores;
  std::vector<Level> levels;         // aligned with members
};

/// Precomputed distance matrices over every prepared day, shared by runs.
class MatrixStore {
 public:
  MatrixStore(const PreparedDays& prepared, const RunConfig& cfg, MatrixCache& cache)
      : prepared_(prepared), cfg_(cfg), cache_(cache) {}

  const DistanceMatrix& get(Method method);

 private:
  const PreparedDays& prepared_;
  const RunConfig& cfg_;
  MatrixCache& cache_;
  std::map<Method, DistanceMatrix> matrices_;
};

/// beta: K-Means on the 1-D beta column. ed / dtw: PAM on the ED matrix of
/// full-grid profiles or the DTW matrix of daytime profiles. CH and DB for ed
/// and dtw are evaluated on full-grid profiles; silhouette uses the method's
/// own matrix. Throws DomainError for fewer than 3 members.
Level2Run run_level2(const PreparedDays& prepared, std::span<const std::size_t> members, Method method,
                     const RunConfig& cfg, MatrixStore& matrices);

struct SeasonTable {
  Season season;
  Method method;
  ConfusionMatrix matrix;
};

struct TransitionTable {
  Method method;
  TransitionMatrix matrix;
};

struct MeanProfiles {
  Method method;
  std::map<std::pair<Season, Level>, std::vector<double>> profiles;
};

struct RunResults {
  nlohmann::json config;  // config_echo
  PreparedDays prepared;
  SeasonCalendar seasons;
  std::vector<Level2Run> seasonal;
  std::vector<Level2Run> all_season;

  // analysis
  LabeledCalendar labeled;
  BetaRanges ranges;
  std::map<std::pair<Method, Level>, BetaRange> all_season_ranges;
  std::vector<SeasonTable> confusions;
  std::vector<TransitionTable> transitions;
  std::vector<MeanProfiles> profiles;
};

std::vector<Level2Run> run_clustering(const PreparedDays& prepared, const SeasonCalendar& seasons,
                                      const RunConfig& cfg, MatrixCache& cache);

/// Fills the analysis fields from prepared days, seasons and runs.
void analyze(RunResults& results);

RunResults run_pipeline(const RunConfig& cfg);

// Stage artifacts. Readers restore exactly what the writers store.
void write_seasons_json(const std::filesystem::path& path, const SeasonCalendar& cal);
void read_seasons_json(const std::filesystem::path& path, SeasonCalendar& cal);
void write_clusters_json(const std::filesystem::path& path, const PreparedDays& prepared,
                         std::span<const Level2Run> runs);
std::vector<Level2Run> read_clusters_json(const std::filesystem::path& path, const PreparedDays& prepared);
void write_labels_csv(const std::filesystem::path& path, const LabeledCalendar& labeled);

enum class ReportFormat { json, csv_bundle };

nlohmann::json report_json(const RunResults& results);

/// Serialized report: sorted keys, 9 significant digits, "inf" for infinities.
std::string report_text(const RunResults& results);

/// Writes report.json or the CSV bundle into `dir`. Throws IoError.
void emit_report(const RunResults& results, ReportFormat format, const std::filesystem::path& dir);

}  // namespace solclust
