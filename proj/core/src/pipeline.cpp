#include "solclust/pipeline.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <thread>

#include "solclust/digest.hpp"
#include "solclust/error.hpp"
#include "text.hpp"

namespace solclust {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

unsigned thread_count(unsigned requested, std::size_t work) {
  unsigned t = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  return static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(work, 1)));
}

KMeansOptions kmeans_options(const RunConfig& cfg) {
  return {.seed = cfg.kmeans.seed,
          .restarts = cfg.kmeans.restarts,
          .tol = cfg.kmeans.tol,
          .max_iter = cfg.kmeans.max_iter,
          .threads = cfg.threads};
}

std::string season_name(const std::optional<Season>& s) {
  return s ? std::string(1, to_char(*s)) : std::string("All");
}

}  // namespace

std::vector<double> PreparedDays::betas(std::span<const std::size_t> members) const {
  std::vector<double> out;
  out.reserve(members.size());
  for (std::size_t i : members) out.push_back(features.at(i).beta);
  return out;
}

std::vector<fs::path> resolve_inputs(const RunConfig& cfg) {
  if (!cfg.inputs.empty()) return cfg.inputs;
  if (cfg.data_dir.empty()) throw ConfigError("no inputs: set io.inputs or io.data_dir");
  std::vector<fs::path> files;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(cfg.data_dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
  }
  if (ec) throw DataError("cannot list " + cfg.data_dir.string() + ": " + ec.message());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw DataError("no *.csv files in " + cfg.data_dir.string());
  return files;
}

std::vector<DayRecord> load_days(const RunConfig& cfg, std::vector<InputFile>* provenance) {
  std::vector<RawSample> samples;
  for (const fs::path& path : resolve_inputs(cfg)) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open input " + path.string());
    try {
      auto part = parse_raw_csv(in, cfg.csv);
      samples.insert(samples.end(), part.begin(), part.end());
    } catch (const FormatError& e) {
      throw FormatError(path.filename().string() + ": " + e.what());
    }
    if (provenance) provenance->push_back({path.filename().string(), sha256_file(path)});
  }
  return segment_days(std::move(samples));
}

std::vector<ClearSkyDay> clearsky_days(std::span<const Date> dates, const RunConfig& cfg) {
  std::vector<ClearSkyDay> out(dates.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < dates.size(); i = next++) {
      out[i] = clearsky_day(dates[i], cfg.site, cfg.turbidity);
    }
  };
  const unsigned threads = thread_count(cfg.threads, dates.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return out;
}

PreparedDays prepare_days(const RunConfig& cfg) {
  cfg.validate();
  PreparedDays p;
  const std::vector<DayRecord> raw = load_days(cfg, &p.inputs);
  p.days_total = raw.size();
  std::vector<Date> dates;
  for (const auto& d : raw) dates.push_back(d.date);
  std::vector<ClearSkyDay> cs = clearsky_days(dates, cfg);

  FeatureTable table = feature_table(raw, cs, cfg.quality, cfg.sunshine_threshold);
  p.days = std::move(table.days);
  p.features = std::move(table.rows);
  p.rejections = std::move(table.rejections);
  std::size_t j = 0;
  for (const DayRecord& d : p.days) {
    while (cs[j].date != d.date) ++j;
    p.clearsky.push_back(std::move(cs[j]));
  }
  spdlog::info("prepared {} of {} days ({} rejected)", p.days.size(), p.days_total, p.rejections.size());
  return p;
}

SeasonCalendar run_seasons(std::span<const DayFeatures> features, const RunConfig& cfg) {
  return identify_seasons(features, {.kmeans = kmeans_options(cfg), .smoothing_window = cfg.smoothing_window});
}

const DistanceMatrix& MatrixStore::get(Method method) {
  if (auto it = matrices_.find(method); it != matrices_.end()) return it->second;
  std::vector<ProfileVector> profiles;
  profiles.reserve(prepared_.days.size());
  Metric metric = Metric::euclidean;
  PairwiseOptions opts{.band = std::nullopt, .threads = cfg_.threads};
  if (method == Method::ed) {
    for (const DayRecord& d : prepared_.days) {
      profiles.push_back(resample_profile(d, {}, ResampleMode::full_grid));
    }
  } else if (method == Method::dtw) {
    metric = Metric::dtw;
    opts.band = cfg_.dtw_band;
    for (std::size_t i = 0; i < prepared_.days.size(); ++i) {
      profiles.push_back(resample_profile(prepared_.days[i], prepared_.clearsky[i],
                                          ResampleMode::daytime, cfg_.dtw_points));
    }
  } else {
    throw DomainError("no distance matrix for the beta method");
  }
  spdlog::info("distance matrix {} over {} days", to_string(metric), profiles.size());
  return matrices_.emplace(method, cache_.get_or_compute(profiles, metric, opts)).first->second;
}

Level2Run run_level2(const PreparedDays& prepared, std::span<const std::size_t> members, Method method,
                     const RunConfig& cfg, MatrixStore& matrices) {
  if (members.size() < 3) {
    throw DomainError("level-2 clustering needs at least 3 days, got " + std::to_string(members.size()));
  }
  Level2Run run;
  run.method = method;
  run.members.assign(members.begin(), members.end());
  const std::vector<double> betas = prepared.betas(members);

  if (method == Method::beta) {
    const FeatureMatrix x = FeatureMatrix::column(betas);
    run.assignment = kmeans(x, 3, kmeans_options(cfg));
    run.scores.silhouette = silhouette(x, run.assignment.labels);
    run.scores.calinski_harabasz = calinski_harabasz(x, run.assignment.labels);
    run.scores.davies_bouldin = davies_bouldin(x, run.assignment.labels);
    run.scores.space = "beta";
  } else {
    const DistanceMatrix dist = matrices.get(method).subset(members);
    run.assignment = kmedoids(dist, 3, {.seed = cfg.kmeans.seed, .max_iter = cfg.kmeans.max_iter});
    FeatureMatrix profiles(members.size(), kMinutesPerDay);
    for (std::size_t r = 0; r < members.size(); ++r) {
      const auto& ghi = prepared.days[members[r]].ghi;
      std::copy(ghi.begin(), ghi.end(), profiles.row(r).begin());
    }
    run.scores.silhouette = silhouette(run.assignment.labels, dist);
    run.scores.calinski_harabasz = calinski_harabasz(profiles, run.assignment.labels);
    run.scores.davies_bouldin = davies_bouldin(profiles, run.assignment.labels);
    run.scores.space = method == Method::ed
                           ? "ed matrix; ch/db on full-grid profiles"
                           : "dtw matrix (" + std::to_string(cfg.dtw_points) +
                                 " daytime points); ch/db on full-grid profiles";
  }
  run.levels = assign_levels(run.assignment, betas);
  return run;
}

std::vector<Level2Run> run_clustering(const PreparedDays& prepared, const SeasonCalendar& seasons,
                                      const RunConfig& cfg, MatrixCache& cache) {
  MatrixStore store(prepared, cfg, cache);
  std::vector<Level2Run> runs;
  for (Season s : kSeasons) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < prepared.days.size(); ++i) {
      if (seasons.at(prepared.days[i].date) == s) members.push_back(i);
    }
    for (Method m : cfg.level2_methods) {
      Level2Run r = run_level2(prepared, members, m, cfg, store);
      r.season = s;
      runs.push_back(std::move(r));
    }
  }
  std::vector<std::size_t> everyone(prepared.days.size());
  for (std::size_t i = 0; i < everyone.size(); ++i) everyone[i] = i;
  for (Method m : cfg.level2_methods) runs.push_back(run_level2(prepared, everyone, m, cfg, store));
  return runs;
}

void analyze(RunResults& results) {
  const PreparedDays& p = results.prepared;
  results.labeled.clear();
  for (const Level2Run& r : results.seasonal) {
    for (std::size_t j = 0; j < r.members.size(); ++j) {
      const std::size_t i = r.members[j];
      results.labeled.push_back({p.days[i].date, *r.season, r.levels[j], r.method, p.features[i].beta});
    }
  }
  std::sort(results.labeled.begin(), results.labeled.end(), [](const LabeledDay& a, const LabeledDay& b) {
    if (a.date != b.date) return a.date < b.date;
    return a.method < b.method;
  });
  results.ranges = beta_ranges(results.labeled);

  results.all_season_ranges.clear();
  for (const Level2Run& r : results.all_season) {
    for (std::size_t j = 0; j < r.members.size(); ++j) {
      const double b = p.features[r.members[j]].beta;
      auto [it, fresh] = results.all_season_ranges.try_emplace({r.method, r.levels[j]}, BetaRange{b, b, 0});
      it->second.min = std::min(it->second.min, b);
      it->second.max = std::max(it->second.max, b);
      ++it->second.count;
    }
  }

  auto find_run = [&](Season s, Method m) -> const Level2Run* {
    for (const Level2Run& r : results.seasonal) {
      if (r.season == s && r.method == m) return &r;
    }
    return nullptr;
  };
  auto dated = [&](const Level2Run& r) {
    std::vector<DatedLevel> out;
    for (std::size_t j = 0; j < r.members.size(); ++j) out.push_back({p.days[r.members[j]].date, r.levels[j]});
    return out;
  };

  results.confusions.clear();
  results.transitions.clear();
  results.profiles.clear();
  std::vector<Method> methods;
  for (const Level2Run& r : results.seasonal) {
    if (std::find(methods.begin(), methods.end(), r.method) == methods.end()) methods.push_back(r.method);
  }
  for (Season s : kSeasons) {
    const Level2Run* ref = find_run(s, Method::beta);
    if (!ref) continue;
    for (Method m : {Method::ed, Method::dtw}) {
      if (const Level2Run* other = find_run(s, m)) {
        results.confusions.push_back({s, m, confusion(dated(*ref), dated(*other))});
      }
    }
  }
  for (Method m : methods) {
    for (Season s : kSeasons) {
      if (find_run(s, m)) results.transitions.push_back({m, transitions(results.labeled, s, m)});
    }
  }
  for (Method m : methods) {
    MeanProfiles mp{m, {}};
    for (Season s : kSeasons) {
      const Level2Run* r = find_run(s, m);
      if (!r) continue;
      for (Level l : kLevels) {
        std::vector<const std::vector<double>*> members;
        for (std::size_t j = 0; j < r->members.size(); ++j) {
          if (r->levels[j] == l) members.push_back(&p.days[r->members[j]].ghi);
        }
        if (!members.empty()) mp.profiles[{s, l}] = mean_profile(members);
      }
    }
    results.profiles.push_back(std::move(mp));
  }
}

RunResults run_pipeline(const RunConfig& cfg) {
  RunResults results;
  results.config = config_echo(cfg);
  results.prepared = prepare_days(cfg);
  results.seasons = run_seasons(results.prepared.features, cfg);
  MatrixCache cache(cfg.cache_dir);
  auto runs = run_clustering(results.prepared, results.seasons, cfg, cache);
  for (auto& r : runs) (r.season ? results.seasonal : results.all_season).push_back(std::move(r));
  analyze(results);
  return results;
}

// ---------------------------------------------------------------------------
// Stage artifacts

namespace {

json scores_exact(const QualityScores& s) {
  return {{"silhouette", s.silhouette},
          {"calinski_harabasz", std::isinf(s.calinski_harabasz) ? json("inf") : json(s.calinski_harabasz)},
          {"davies_bouldin", std::isinf(s.davies_bouldin) ? json("inf") : json(s.davies_bouldin)},
          {"space", s.space}};
}

double score_value(const json& j) {
  if (j.is_string()) return std::numeric_limits<double>::infinity();
  return j.get<double>();
}

QualityScores scores_from(const json& j) {
  return {score_value(j.at("silhouette")), score_value(j.at("calinski_harabasz")),
          score_value(j.at("davies_bouldin")), j.at("space").get<std::string>()};
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace

void write_seasons_json(const fs::path& path, const SeasonCalendar& cal) {
  std::string raw;
  for (Season s : cal.raw_labels) raw += to_char(s);
  json j{{"scores", scores_exact(cal.scores)},
         {"smoothing_window", cal.smoothing_window ? json(*cal.smoothing_window) : json(nullptr)},
         {"smoothing_changes", cal.smoothing_changes},
         {"raw_labels", raw}};
  write_text(path, j.dump(2) + "\n");
}

void read_seasons_json(const fs::path& path, SeasonCalendar& cal) {
  const json j = read_json(path);
  try {
    cal.scores = scores_from(j.at("scores"));
    cal.smoothing_changes = j.at("smoothing_changes").get<std::size_t>();
    if (j.at("smoothing_window").is_null()) {
      cal.smoothing_window.reset();
    } else {
      cal.smoothing_window = j.at("smoothing_window").get<int>();
    }
    const auto raw = j.at("raw_labels").get<std::string>();
    if (raw.size() != cal.dates.size()) throw DataError(path.string() + " does not match the calendar");
    cal.raw_labels.clear();
    for (char c : raw) cal.raw_labels.push_back(parse_season(std::string(1, c)));
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_clusters_json(const fs::path& path, const PreparedDays& prepared, std::span<const Level2Run> runs) {
  json arr = json::array();
  for (const Level2Run& r : runs) {
    std::vector<std::string> dates;
    for (std::size_t i : r.members) dates.push_back(format_date(prepared.days[i].date));
    arr.push_back({{"season", r.season ? json(std::string(1, to_char(*r.season))) : json(nullptr)},
                   {"method", to_string(r.method)},
                   {"dates", dates},
                   {"labels", r.assignment.labels},
                   {"medoids", r.assignment.medoids},
                   {"centers", r.assignment.centers},
                   {"inertia", r.assignment.inertia},
                   {"iterations", r.assignment.iterations},
                   {"seed", r.assignment.seed},
                   {"scores", scores_exact(r.scores)}});
  }
  write_text(path, json{{"runs", arr}}.dump(2) + "\n");
}

std::vector<Level2Run> read_clusters_json(const fs::path& path, const PreparedDays& prepared) {
  const json j = read_json(path);
  std::map<Date, std::size_t> index;
  for (std::size_t i = 0; i < prepared.days.size(); ++i) index[prepared.days[i].date] = i;
  std::vector<Level2Run> runs;
  try {
    for (const json& e : j.at("runs")) {
      Level2Run r;
      if (!e.at("season").is_null()) r.season = parse_season(e.at("season").get<std::string>());
      r.method = parse_method(e.at("method").get<std::string>());
      for (const auto& d : e.at("dates")) {
        const auto it = index.find(parse_date(d.get<std::string>()));
        if (it == index.end()) throw DataError(path.string() + " refers to a day not in the inputs");
        r.members.push_back(it->second);
      }
      r.assignment.k = 3;
      r.assignment.labels = e.at("labels").get<std::vector<int>>();
      r.assignment.medoids = e.at("medoids").get<std::vector<std::size_t>>();
      r.assignment.centers = e.at("centers").get<std::vector<std::vector<double>>>();
      r.assignment.inertia = e.at("inertia").get<double>();
      r.assignment.iterations = e.at("iterations").get<int>();
      r.assignment.seed = e.at("seed").get<std::uint64_t>();
      r.scores = scores_from(e.at("scores"));
      if (r.assignment.labels.size() != r.members.size()) throw DataError(path.string() + ": label count mismatch");
      r.levels = assign_levels(r.assignment, prepared.betas(r.members));
      runs.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  return runs;
}

void write_labels_csv(const fs::path& path, const LabeledCalendar& labeled) {
  std::string text = "date,season,method,level,beta\n";
  for (const LabeledDay& d : labeled) {
    text += format_date(d.date) + ',' + to_char(d.season) + ',' + to_string(d.method) + ',' +
            to_char(d.level) + ',' + detail::format("%.9g", d.beta) + '\n';
  }
  write_text(path, text);
}

// ---------------------------------------------------------------------------
// Report

namespace {

json num(double v) {
  if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
  return json(std::stod(detail::format("%.9g", v)));
}

json scores_report(const QualityScores& s) {
  return {{"silhouette", num(s.silhouette)},
          {"calinski_harabasz", num(s.calinski_harabasz)},
          {"davies_bouldin", num(s.davies_bouldin)},
          {"space", s.space}};
}

json run_report(const Level2Run& r, const PreparedDays& p) {
  std::array<std::size_t, 3> sizes{};
  std::array<BetaRange, 3> ranges{};
  for (std::size_t j = 0; j < r.members.size(); ++j) {
    const auto l = static_cast<std::size_t>(r.levels[j]);
    const double b = p.features[r.members[j]].beta;
    if (sizes[l] == 0) ranges[l] = {b, b, 0};
    ranges[l].min = std::min(ranges[l].min, b);
    ranges[l].max = std::max(ranges[l].max, b);
    ++ranges[l].count;
    ++sizes[l];
  }
  json sz, br;
  for (Level l : kLevels) {
    const auto i = static_cast<std::size_t>(l);
    const std::string key(1, to_char(l));
    sz[key] = sizes[i];
    br[key] = {{"min", num(ranges[i].min)}, {"max", num(ranges[i].max)}, {"count", ranges[i].count}};
  }
  return {{"season", season_name(r.season)},
          {"method", to_string(r.method)},
          {"scores", scores_report(r.scores)},
          {"cluster_sizes", sz},
          {"beta_ranges", br},
          {"days", r.members.size()}};
}

template <typename Counts, typename Probs>
json matrix_report(const Counts& counts, const Probs& probs) {
  json c = json::array(), f = json::array();
  for (std::size_t r = 0; r < 3; ++r) {
    c.push_back({counts[r][0], counts[r][1], counts[r][2]});
    f.push_back({num(probs[r][0]), num(probs[r][1]), num(probs[r][2])});
  }
  return {{"counts", c}, {"probabilities", f}};
}

}  // namespace

json report_json(const RunResults& results) {
  const PreparedDays& p = results.prepared;
  json j;
  j["schema_version"] = kReportSchemaVersion;
  json inputs = json::array();
  for (const InputFile& f : p.inputs) inputs.push_back({{"name", f.name}, {"sha256", f.sha256}});
  j["provenance"] = {{"version", kVersion},
                     {"seed", results.config.at("kmeans").at("seed")},
                     {"inputs", inputs}};
  j["config"] = results.config;

  json rejections = json::array();
  for (const Rejection& r : p.rejections) {
    rejections.push_back({{"date", format_date(r.date)}, {"reason", r.reason}, {"availability", num(r.availability)}});
  }
  j["ingest"] = {{"days_total", p.days_total},
                 {"days_retained", p.days.size()},
                 {"days_rejected", p.rejections.size()},
                 {"rejections", rejections}};

  const SeasonCalendar& cal = results.seasons;
  json counts{{"W", 0}, {"T", 0}, {"S", 0}};
  for (Season s : cal.labels) counts[std::string(1, to_char(s))] = counts[std::string(1, to_char(s))].get<int>() + 1;
  json bounds = json::array();
  for (const SeasonBoundary& b : cal.boundaries) {
    bounds.push_back({{"date", format_date(b.date)},
                      {"from", std::string(1, to_char(b.from))},
                      {"to", std::string(1, to_char(b.to))}});
  }
  j["seasons"] = {{"counts", counts},
                  {"boundaries", bounds},
                  {"scores", scores_report(cal.scores)},
                  {"smoothing_window", cal.smoothing_window ? json(*cal.smoothing_window) : json(nullptr)},
                  {"smoothing_changes", cal.smoothing_changes}};

  json level2 = json::array(), all = json::array();
  for (const Level2Run& r : results.seasonal) level2.push_back(run_report(r, p));
  for (const Level2Run& r : results.all_season) all.push_back(run_report(r, p));
  j["level2"] = level2;
  j["all_season"] = all;

  json conf = json::array();
  for (const SeasonTable& t : results.confusions) {
    json m = matrix_report(t.matrix.counts, t.matrix.fractions);
    m["season"] = std::string(1, to_char(t.season));
    m["method"] = to_string(t.method);
    m["reference"] = "beta";
    conf.push_back(m);
  }
  j["confusion"] = conf;

  json trans = json::array();
  for (const TransitionTable& t : results.transitions) {
    json m = matrix_report(t.matrix.counts, t.matrix.probabilities);
    m["season"] = std::string(1, to_char(t.matrix.season));
    m["method"] = to_string(t.method);
    trans.push_back(m);
  }
  j["transitions"] = trans;
  return j;
}

std::string report_text(const RunResults& results) { return report_json(results).dump(2) + "\n"; }

void emit_report(const RunResults& results, ReportFormat format, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  if (format == ReportFormat::json) {
    write_text(dir / "report.json", report_text(results));
    return;
  }
  const PreparedDays& p = results.prepared;
  auto g9 = [](double v) { return detail::format("%.9g", v); };

  std::string perf = "season,method,silhouette,calinski_harabasz,davies_bouldin,n_H,n_M,n_L,space\n";
  std::string ranges = "season,method,level,min,max,count\n";
  for (const auto* group : {&results.seasonal, &results.all_season}) {
    for (const Level2Run& r : *group) {
      const json rep = run_report(r, p);
      perf += season_name(r.season) + ',' + to_string(r.method) + ',' + g9(r.scores.silhouette) + ',' +
              g9(r.scores.calinski_harabasz) + ',' + g9(r.scores.davies_bouldin);
      for (Level l : kLevels) perf += ',' + std::to_string(rep["cluster_sizes"][std::string(1, to_char(l))].get<std::size_t>());
      perf += ',' + detail::csv_quote(r.scores.space) + '\n';
      for (Level l : kLevels) {
        const json& br = rep["beta_ranges"][std::string(1, to_char(l))];
        ranges += season_name(r.season) + ',' + to_string(r.method) + ',' + to_char(l) + ',' +
                  g9(br["min"].get<double>()) + ',' + g9(br["max"].get<double>()) + ',' +
                  std::to_string(br["count"].get<std::size_t>()) + '\n';
      }
    }
  }
  write_text(dir / "performance_scores.csv", perf);
  write_text(dir / "beta_ranges.csv", ranges);

  auto matrix_rows = [&](const std::string& season, const std::string& method, const auto& counts,
                         const auto& probs) {
    std::string out;
    for (Level from : kLevels) {
      const auto r = static_cast<std::size_t>(from);
      out += season + ',' + method + ',' + to_char(from);
      for (std::size_t c = 0; c < 3; ++c) out += ',' + g9(probs[r][c]);
      for (std::size_t c = 0; c < 3; ++c) out += ',' + std::to_string(counts[r][c]);
      out += '\n';
    }
    return out;
  };
  std::string conf = "season,method,reference_level,H,M,L,n_H,n_M,n_L\n";
  for (const SeasonTable& t : results.confusions) {
    conf += matrix_rows(std::string(1, to_char(t.season)), to_string(t.method), t.matrix.counts, t.matrix.fractions);
  }
  write_text(dir / "confusion.csv", conf);
  std::string trans = "season,method,from_level,H,M,L,n_H,n_M,n_L\n";
  for (const TransitionTable& t : results.transitions) {
    trans += matrix_rows(std::string(1, to_char(t.matrix.season)), to_string(t.method), t.matrix.counts,
                         t.matrix.probabilities);
  }
  write_text(dir / "transitions.csv", trans);

  for (const MeanProfiles& mp : results.profiles) {
    std::string text = "minute";
    std::vector<const std::vector<double>*> cols;
    for (Season s : kSeasons) {
      for (Level l : kLevels) {
        const auto it = mp.profiles.find({s, l});
        if (it == mp.profiles.end()) continue;
        text += std::string(",") + to_char(s) + '-' + to_char(l);
        cols.push_back(&it->second);
      }
    }
    text += '\n';
    for (std::size_t m = 0; m < kMinutesPerDay; ++m) {
      text += std::to_string(m);
      for (const auto* c : cols) text += ',' + g9((*c)[m]);
      text += '\n';
    }
    write_text(dir / ("mean_profiles_" + to_string(mp.method) + ".csv"), text);
  }

  std::ostringstream cal;
  write_calendar_csv(cal, results.seasons);
  write_text(dir / "season_calendar.csv", cal.str());
  std::ostringstream feats;
  write_features_csv(feats, p.features);
  write_text(dir / "features.csv", feats.str());
  std::ostringstream rej;
  write_rejections_csv(rej, p.rejections);
  write_text(dir / "rejected_days.csv", rej.str());
}

}  // namespace solclust
