#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <fstream>
#include <iostream>
#include <sstream>

#include "solclust/error.hpp"
#include "solclust/fetch.hpp"
#include "solclust/pipeline.hpp"

namespace fs = std::filesystem;
using namespace solclust;

namespace {

enum Exit { kOk = 0, kInternal = 1, kConfig = 2, kData = 3, kFetch = 4 };

struct Options {
  std::string config_path;
  std::string site;
  std::string methods;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string cache;
  std::string data;
  std::optional<unsigned> threads;
  bool offline = false;
  bool verbose = false;
  bool quiet = false;
};

std::vector<Method> parse_methods(const std::string& list) {
  std::vector<Method> out;
  std::stringstream ss(list);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty()) continue;
    try {
      out.push_back(parse_method(item));
    } catch (const Error& e) {
      throw ConfigError(std::string("--methods: ") + e.what());
    }
  }
  return out;
}

RunConfig build_config(const Options& o) {
  RunConfig cfg;
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) throw ConfigError("cannot open config " + o.config_path);
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(o.config_path + ": " + e.what());
    }
    cfg = o.site.empty() ? parse_config(doc) : parse_config(doc, site_preset(o.site));
    // input paths in a config file are relative to that file
    const fs::path base = fs::path(o.config_path).parent_path();
    for (auto& p : cfg.inputs) {
      if (p.is_relative()) p = base / p;
    }
    if (!cfg.data_dir.empty() && cfg.data_dir.is_relative()) cfg.data_dir = base / cfg.data_dir;
  } else {
    cfg = site_preset(o.site.empty() ? "golden" : o.site);
  }
  if (!o.methods.empty()) cfg.level2_methods = parse_methods(o.methods == "none" ? "" : o.methods);
  if (o.seed) cfg.kmeans.seed = *o.seed;
  if (!o.out.empty()) cfg.out_dir = o.out;
  if (!o.cache.empty()) cfg.cache_dir = o.cache;
  if (!o.data.empty()) {
    cfg.data_dir = o.data;
    cfg.inputs.clear();
  }
  if (o.threads) cfg.threads = *o.threads;
  cfg.validate();
  return cfg;
}

fs::path out_dir(const RunConfig& cfg) {
  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  if (ec) throw IoError("cannot create " + cfg.out_dir.string() + ": " + ec.message());
  return cfg.out_dir;
}

void write_stream(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  body(out);
  if (!out) throw IoError("write failed for " + path.string());
}

std::ifstream open_stage(const fs::path& path, const char* producer) {
  std::ifstream in(path);
  if (!in) throw DataError(path.string() + " not found; run `solclust " + producer + "` first");
  return in;
}

int cmd_fetch(const RunConfig& cfg, bool offline) {
  FetchRequest req{cfg.fetch, cfg.data_dir.empty() ? cfg.out_dir / "raw" : cfg.data_dir, offline};
  const FetchReport rep = fetch_midc(req);
  spdlog::info("fetch: {} downloaded, {} already present in {}", rep.downloaded.size(), rep.skipped.size(),
               req.destination.string());
  return kOk;
}

int cmd_clearsky(const RunConfig& cfg) {
  const auto days = load_days(cfg);
  std::vector<Date> dates;
  for (const auto& d : days) dates.push_back(d.date);
  const auto cs = clearsky_days(dates, cfg);
  const fs::path dir = out_dir(cfg);
  write_stream(dir / "clearsky.csv", [&](std::ostream& out) { write_clearsky_csv(out, cs); });
  return kOk;
}

int cmd_features(const RunConfig& cfg) {
  const PreparedDays p = prepare_days(cfg);
  const fs::path dir = out_dir(cfg);
  write_stream(dir / "features.csv", [&](std::ostream& out) { write_features_csv(out, p.features); });
  write_stream(dir / "rejected_days.csv", [&](std::ostream& out) { write_rejections_csv(out, p.rejections); });
  return kOk;
}

SeasonCalendar seasons_stage(const RunConfig& cfg, std::span<const DayFeatures> features) {
  const SeasonCalendar cal = run_seasons(features, cfg);
  const fs::path dir = out_dir(cfg);
  write_stream(dir / "season_calendar.csv", [&](std::ostream& out) { write_calendar_csv(out, cal); });
  write_seasons_json(dir / "seasons.json", cal);
  return cal;
}

int cmd_seasons(const RunConfig& cfg) {
  auto in = open_stage(cfg.out_dir / "features.csv", "features");
  const auto features = read_features_csv(in);
  seasons_stage(cfg, features);
  return kOk;
}

SeasonCalendar load_calendar(const RunConfig& cfg) {
  auto in = open_stage(cfg.out_dir / "season_calendar.csv", "seasons");
  SeasonCalendar cal = read_calendar_csv(in);
  read_seasons_json(cfg.out_dir / "seasons.json", cal);
  return cal;
}

int cmd_cluster(const RunConfig& cfg) {
  const PreparedDays p = prepare_days(cfg);
  const SeasonCalendar cal = load_calendar(cfg);
  MatrixCache cache(cfg.cache_dir);
  const auto runs = run_clustering(p, cal, cfg, cache);
  write_clusters_json(out_dir(cfg) / "clusters.json", p, runs);
  return kOk;
}

void finish_report(RunResults& r, const RunConfig& cfg) {
  analyze(r);
  const fs::path dir = out_dir(cfg);
  emit_report(r, ReportFormat::json, dir);
  emit_report(r, ReportFormat::csv_bundle, dir);
  write_labels_csv(dir / "labels.csv", r.labeled);
  spdlog::info("report written to {}", (dir / "report.json").string());
}

int cmd_report(const RunConfig& cfg) {
  RunResults r;
  r.config = config_echo(cfg);
  r.prepared = prepare_days(cfg);
  r.seasons = load_calendar(cfg);
  open_stage(cfg.out_dir / "clusters.json", "cluster");
  for (auto& run : read_clusters_json(cfg.out_dir / "clusters.json", r.prepared)) {
    (run.season ? r.seasonal : r.all_season).push_back(std::move(run));
  }
  finish_report(r, cfg);
  return kOk;
}

int cmd_all(const RunConfig& cfg) {
  RunResults r;
  r.config = config_echo(cfg);
  r.prepared = prepare_days(cfg);
  const fs::path dir = out_dir(cfg);
  write_stream(dir / "features.csv", [&](std::ostream& out) { write_features_csv(out, r.prepared.features); });
  write_stream(dir / "rejected_days.csv",
               [&](std::ostream& out) { write_rejections_csv(out, r.prepared.rejections); });
  r.seasons = seasons_stage(cfg, r.prepared.features);
  MatrixCache cache(cfg.cache_dir);
  auto runs = run_clustering(r.prepared, r.seasons, cfg, cache);
  write_clusters_json(dir / "clusters.json", r.prepared, runs);
  for (auto& run : runs) (run.season ? r.seasonal : r.all_season).push_back(std::move(run));
  finish_report(r, cfg);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"solclust: two-level clustering of daily solar irradiance profiles"};
  app.require_subcommand(1);
  app.footer("\nExit codes: 0 success, 1 internal error, 2 config error, 3 data error, 4 fetch error.\n\n" + describe_defaults());
  app.get_formatter()->column_width(36);

  Options o;
  app.add_option("--config", o.config_path, "JSON config file (keys listed below)")->check(CLI::ExistingFile);
  app.add_option("--site", o.site, "Preset: golden|hawaii|custom (default: golden, or site.name from --config)")
      ->check(CLI::IsMember({"golden", "hawaii", "custom"}));
  app.add_option("--methods", o.methods, "Level-2 methods, comma separated from beta,ed,dtw or 'none' (default: beta,ed,dtw)");
  app.add_option("--seed", o.seed, "K-Means / PAM seed (default: 42)");
  app.add_option("--out", o.out, "Output directory for stage files and reports (default: out)");
  app.add_option("--cache", o.cache, "Distance-matrix cache directory (default: disabled)");
  app.add_option("--data", o.data, "Directory of raw CSV inputs; fetch destination (default: <out>/raw for fetch)");
  app.add_option("--threads", o.threads, "Worker threads, 0 = all cores (default: 1)");
  app.add_flag("--offline", o.offline, "Forbid network access during fetch");
  app.add_flag("-v,--verbose", o.verbose, "Debug logging");
  app.add_flag("-q,--quiet", o.quiet, "Warnings and errors only");

  auto* fetch = app.add_subcommand("fetch", "Download monthly raw CSVs from the public endpoint");
  auto* clearsky = app.add_subcommand("clearsky", "Write modeled clear-sky GHI per input day");
  auto* features = app.add_subcommand("features", "Clean days and write daily features");
  auto* seasons = app.add_subcommand("seasons", "Level 1: season calendar from features.csv");
  auto* cluster = app.add_subcommand("cluster", "Level 2 and all-season clustering");
  auto* report = app.add_subcommand("report", "Analysis tables and report.json from stage files");
  auto* all = app.add_subcommand("all", "Run features, seasons, cluster and report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  auto logger = spdlog::stderr_color_mt("solclust");
  spdlog::set_default_logger(logger);
  spdlog::set_level(o.verbose ? spdlog::level::debug : o.quiet ? spdlog::level::warn : spdlog::level::info);

  try {
    const RunConfig cfg = build_config(o);
    if (fetch->parsed()) return cmd_fetch(cfg, o.offline);
    if (clearsky->parsed()) return cmd_clearsky(cfg);
    if (features->parsed()) return cmd_features(cfg);
    if (seasons->parsed()) return cmd_seasons(cfg);
    if (cluster->parsed()) return cmd_cluster(cfg);
    if (report->parsed()) return cmd_report(cfg);
    if (all->parsed()) return cmd_all(cfg);
  } catch (const ConfigError& e) {
    spdlog::error("config: {}", e.what());
    return kConfig;
  } catch (const FetchError& e) {
    spdlog::error("fetch: {}", e.what());
    return kFetch;
  } catch (const Error& e) {
    spdlog::error("{}", e.what());
    return kData;
  } catch (const std::exception& e) {
    spdlog::critical("internal error: {}", e.what());
    return kInternal;
  }
  return kInternal;
}
