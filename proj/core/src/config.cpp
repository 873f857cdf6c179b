#include "solclust/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "solclust/error.hpp"

namespace solclust {

using nlohmann::json;

namespace {

constexpr const char* kMidcTemplate =
    "https://midcdmz.nrel.gov/apps/data_api.pl?site={site}&begin={begin}&end={end}";

// Linke turbidity climatology at each station, offset so the yearly clear-sky
// energy extremes match the published ranges for the site.
constexpr std::array<double, 12> kGoldenTurbidity{3.15, 3.30, 3.65, 4.05, 4.75, 4.65,
                                                  4.55, 4.65, 4.45, 3.75, 3.50, 3.15};
constexpr std::array<double, 12> kHawaiiTurbidity{4.25, 4.25, 4.35, 4.45, 4.40, 4.20,
                                                  3.90, 4.10, 4.30, 4.50, 4.30, 4.15};

void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : obj.items()) {
    if (!ok.contains(key)) throw ConfigError("unknown key '" + where + "." + key + "'");
  }
}

template <typename T>
void read(const json& obj, const char* key, const std::string& where, T& out) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("bad value for '" + where + "." + key + "'");
  }
}

template <typename T>
void read_optional(const json& obj, const char* key, const std::string& where, std::optional<T>& out) {
  if (!obj.contains(key)) return;
  if (obj.at(key).is_null()) {
    out.reset();
    return;
  }
  T v{};
  read(obj, key, where, v);
  out = v;
}

std::vector<std::filesystem::path> to_paths(const std::vector<std::string>& v) {
  return {v.begin(), v.end()};
}

}  // namespace

void RunConfig::validate() const {
  try {
    site.validate();
    quality.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (dtw_points < 2) throw ConfigError("dtw_points must be >= 2");
  if (kmeans.restarts < 1 || kmeans.max_iter < 1 || !(kmeans.tol >= 0.0)) {
    throw ConfigError("kmeans: restarts and max_iter must be >= 1, tol >= 0");
  }
  if (smoothing_window && (*smoothing_window < 1 || *smoothing_window % 2 == 0)) {
    throw ConfigError("smoothing_window must be odd and >= 1");
  }
  if (!(sunshine_threshold >= 0.0)) throw ConfigError("sunshine_threshold must be >= 0");
  std::set<Method> seen;
  for (Method m : level2_methods) {
    if (!seen.insert(m).second) throw ConfigError("level2_methods: duplicate " + to_string(m));
  }
  if (fetch.attempts < 1) throw ConfigError("fetch.attempts must be >= 1");
}

RunConfig site_preset(const std::string& name) {
  RunConfig cfg;
  cfg.fetch.url_template = kMidcTemplate;
  if (name == "golden") {
    cfg.site = {"golden", 39.74, -105.18, 1828.8, -7.0};
    cfg.turbidity = TurbidityTable(kGoldenTurbidity);
    cfg.csv = {.timestamp_column = "",
               .date_column = "DATE (MM/DD/YYYY)",
               .time_column = "MST",
               .ghi_column = "Global CMP22 (vent/cor) [W/m^2]",
               .cloud_column = "Total Cloud Cover [%]"};
    cfg.fetch.site_id = "BMS";
  } else if (name == "hawaii") {
    cfg.site = {"hawaii", 19.72, -156.05, 4.0, -10.0};
    cfg.turbidity = TurbidityTable(kHawaiiTurbidity);
    cfg.csv = {.timestamp_column = "",
               .date_column = "DATE (MM/DD/YYYY)",
               .time_column = "HST",
               .ghi_column = "Global Horizontal [W/m^2]",
               .cloud_column = ""};
    cfg.fetch.site_id = "NELHA";
  } else if (name == "custom") {
    cfg.site.name = "custom";
  } else {
    throw ConfigError("unknown site preset '" + name + "' (golden, hawaii, custom)");
  }
  return cfg;
}

RunConfig parse_config(const json& doc, RunConfig cfg) {
  check_keys(doc, "config",
             {"site", "turbidity", "quality", "csv", "level2_methods", "dtw_points", "dtw_band",
              "kmeans", "smoothing_window", "sunshine_threshold", "threads", "fetch", "io"});
  if (doc.contains("site")) {
    const json& s = doc.at("site");
    check_keys(s, "site", {"name", "latitude", "longitude", "elevation", "utc_offset"});
    read(s, "name", "site", cfg.site.name);
    read(s, "latitude", "site", cfg.site.latitude);
    read(s, "longitude", "site", cfg.site.longitude);
    read(s, "elevation", "site", cfg.site.elevation);
    read(s, "utc_offset", "site", cfg.site.utc_offset);
  }
  if (doc.contains("turbidity")) {
    std::vector<double> tl;
    read(doc, "turbidity", "config", tl);
    if (tl.size() != 12) throw ConfigError("turbidity: exactly 12 monthly values required");
    std::array<double, 12> a{};
    std::copy(tl.begin(), tl.end(), a.begin());
    try {
      cfg.turbidity = TurbidityTable(a);
    } catch (const DomainError& e) {
      throw ConfigError(std::string("turbidity: ") + e.what());
    }
  }
  if (doc.contains("quality")) {
    const json& q = doc.at("quality");
    check_keys(q, "quality", {"min_availability", "max_interp_gap"});
    read(q, "min_availability", "quality", cfg.quality.min_availability);
    read(q, "max_interp_gap", "quality", cfg.quality.max_interp_gap);
  }
  if (doc.contains("csv")) {
    const json& c = doc.at("csv");
    check_keys(c, "csv", {"timestamp_column", "date_column", "time_column", "ghi_column", "cloud_column"});
    read(c, "timestamp_column", "csv", cfg.csv.timestamp_column);
    read(c, "date_column", "csv", cfg.csv.date_column);
    read(c, "time_column", "csv", cfg.csv.time_column);
    read(c, "ghi_column", "csv", cfg.csv.ghi_column);
    read(c, "cloud_column", "csv", cfg.csv.cloud_column);
  }
  if (doc.contains("level2_methods")) {
    std::vector<std::string> names;
    read(doc, "level2_methods", "config", names);
    cfg.level2_methods.clear();
    try {
      for (const auto& n : names) cfg.level2_methods.push_back(parse_method(n));
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
  }
  read(doc, "dtw_points", "config", cfg.dtw_points);
  read_optional(doc, "dtw_band", "config", cfg.dtw_band);
  if (doc.contains("kmeans")) {
    const json& k = doc.at("kmeans");
    check_keys(k, "kmeans", {"restarts", "tol", "max_iter", "seed"});
    read(k, "restarts", "kmeans", cfg.kmeans.restarts);
    read(k, "tol", "kmeans", cfg.kmeans.tol);
    read(k, "max_iter", "kmeans", cfg.kmeans.max_iter);
    read(k, "seed", "kmeans", cfg.kmeans.seed);
  }
  read_optional(doc, "smoothing_window", "config", cfg.smoothing_window);
  read(doc, "sunshine_threshold", "config", cfg.sunshine_threshold);
  read(doc, "threads", "config", cfg.threads);
  if (doc.contains("fetch")) {
    const json& f = doc.at("fetch");
    check_keys(f, "fetch", {"site_id", "url_template", "first_month", "last_month", "attempts",
                            "backoff_seconds"});
    read(f, "site_id", "fetch", cfg.fetch.site_id);
    read(f, "url_template", "fetch", cfg.fetch.url_template);
    read(f, "first_month", "fetch", cfg.fetch.first_month);
    read(f, "last_month", "fetch", cfg.fetch.last_month);
    read(f, "attempts", "fetch", cfg.fetch.attempts);
    read(f, "backoff_seconds", "fetch", cfg.fetch.backoff_seconds);
  }
  if (doc.contains("io")) {
    const json& io = doc.at("io");
    check_keys(io, "io", {"inputs", "data_dir", "out_dir", "cache_dir"});
    std::vector<std::string> inputs;
    std::string data_dir = cfg.data_dir.string(), out_dir = cfg.out_dir.string(),
                cache_dir = cfg.cache_dir.string();
    if (io.contains("inputs")) {
      read(io, "inputs", "io", inputs);
      cfg.inputs = to_paths(inputs);
    }
    read(io, "data_dir", "io", data_dir);
    read(io, "out_dir", "io", out_dir);
    read(io, "cache_dir", "io", cache_dir);
    cfg.data_dir = data_dir;
    cfg.out_dir = out_dir;
    cfg.cache_dir = cache_dir;
  }
  cfg.validate();
  return cfg;
}

RunConfig parse_config(const json& doc) {
  std::string preset = "custom";
  if (doc.is_object() && doc.contains("site") && doc.at("site").is_object() &&
      doc.at("site").contains("name") && doc.at("site").at("name").is_string()) {
    const auto name = doc.at("site").at("name").get<std::string>();
    if (name == "golden" || name == "hawaii") preset = name;
  }
  return parse_config(doc, site_preset(preset));
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
  return parse_config(doc, std::move(base));
}

json config_echo(const RunConfig& cfg) {
  json j;
  j["site"] = {{"name", cfg.site.name},
               {"latitude", cfg.site.latitude},
               {"longitude", cfg.site.longitude},
               {"elevation", cfg.site.elevation},
               {"utc_offset", cfg.site.utc_offset}};
  j["turbidity"] = cfg.turbidity.monthly();
  j["quality"] = {{"min_availability", cfg.quality.min_availability},
                  {"max_interp_gap", cfg.quality.max_interp_gap}};
  j["csv"] = {{"timestamp_column", cfg.csv.timestamp_column},
              {"date_column", cfg.csv.date_column},
              {"time_column", cfg.csv.time_column},
              {"ghi_column", cfg.csv.ghi_column},
              {"cloud_column", cfg.csv.cloud_column}};
  std::vector<std::string> methods;
  for (Method m : cfg.level2_methods) methods.push_back(to_string(m));
  j["level2_methods"] = methods;
  j["dtw_points"] = cfg.dtw_points;
  j["dtw_band"] = cfg.dtw_band ? json(*cfg.dtw_band) : json(nullptr);
  j["kmeans"] = {{"restarts", cfg.kmeans.restarts},
                 {"tol", cfg.kmeans.tol},
                 {"max_iter", cfg.kmeans.max_iter},
                 {"seed", cfg.kmeans.seed}};
  j["smoothing_window"] = cfg.smoothing_window ? json(*cfg.smoothing_window) : json(nullptr);
  j["sunshine_threshold"] = cfg.sunshine_threshold;
  return j;
}

json to_json(const RunConfig& cfg) {
  json j = config_echo(cfg);
  j["threads"] = cfg.threads;
  j["fetch"] = {{"site_id", cfg.fetch.site_id},
                {"url_template", cfg.fetch.url_template},
                {"first_month", cfg.fetch.first_month},
                {"last_month", cfg.fetch.last_month},
                {"attempts", cfg.fetch.attempts},
                {"backoff_seconds", cfg.fetch.backoff_seconds}};
  std::vector<std::string> inputs;
  for (const auto& p : cfg.inputs) inputs.push_back(p.string());
  j["io"] = {{"inputs", inputs},
             {"data_dir", cfg.data_dir.string()},
             {"out_dir", cfg.out_dir.string()},
             {"cache_dir", cfg.cache_dir.string()}};
  return j;
}

std::string describe_defaults() {
  std::ostringstream out;
  out << "Config keys (JSON) and defaults for --site custom:\n"
      << to_json(site_preset("custom")).dump(2) << "\n"
      << "Presets golden and hawaii also set site, turbidity, csv columns and fetch.site_id.\n";
  return out.str();
}

}  // namespace solclust
