#include "solclust/fetch.hpp"

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>
#include <spdlog/spdlog.h>

#include <cmath>
#include <fstream>
#include <thread>

#include "solclust/digest.hpp"
#include "solclust/error.hpp"
#include "text.hpp"

namespace solclust {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

Date parse_month(const std::string& ym) {
  try {
    return parse_date(ym + "-01");
  } catch (const FormatError&) {
    throw ConfigError("fetch: month '" + ym + "' is not YYYY-MM");
  }
}

std::string compact_date(const Date& d) {
  return detail::format("%04d%02u%02u", static_cast<int>(d.year()), static_cast<unsigned>(d.month()),
                        static_cast<unsigned>(d.day()));
}

void replace_all(std::string& s, std::string_view from, const std::string& to) {
  for (auto pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size())) {
    s.replace(pos, from.size(), to);
  }
}

json read_manifest(const fs::path& path) {
  if (!fs::exists(path)) return json::object();
  std::ifstream in(path);
  try {
    return json::parse(in);
  } catch (const json::parse_error&) {
    spdlog::warn("fetch: ignoring unreadable manifest {}", path.string());
    return json::object();
  }
}

void write_manifest(const fs::path& path, const json& manifest) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << manifest.dump(2) << '\n';
}

}  // namespace

HttpResult http_get(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) return {0, {}, "malformed URL " + url};
  const auto path_start = url.find('/', scheme_end + 3);
  const std::string origin = url.substr(0, path_start);
  const std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

  httplib::Client client(origin);
  client.set_connection_timeout(30);
  client.set_read_timeout(300);
  client.set_follow_location(true);
  auto res = client.Get(path);
  if (!res) return {0, {}, httplib::to_string(res.error())};
  return {res->status, res->body, {}};
}

std::string expand_url(const std::string& url_template, const std::string& site, const Date& first) {
  using namespace std::chrono;
  const Date last{first.year() / first.month() / std::chrono::last};
  std::string url = url_template;
  replace_all(url, "{site}", site);
  replace_all(url, "{begin}", compact_date(first));
  replace_all(url, "{end}", compact_date(last));
  return url;
}

FetchReport fetch_midc(const FetchRequest& request, const HttpGet& get) {
  const FetchConfig& ep = request.endpoint;
  if (ep.site_id.empty() || ep.url_template.empty()) {
    throw ConfigError("fetch: site_id and url_template are required");
  }
  Date month = parse_month(ep.first_month);
  const Date last = parse_month(ep.last_month);
  std::error_code ec;
  fs::create_directories(request.destination, ec);
  if (ec) throw IoError("cannot create " + request.destination.string() + ": " + ec.message());

  const fs::path manifest_path = request.destination / "manifest.json";
  json manifest = read_manifest(manifest_path);
  FetchReport report;
  std::vector<std::string> failures;

  for (; month <= last; month = Date{month.year() / month.month() / 1} + std::chrono::months{1}) {
    const std::string name = detail::format("%s_%04d%02u.csv", ep.site_id.c_str(),
                                            static_cast<int>(month.year()),
                                            static_cast<unsigned>(month.month()));
    const fs::path file = request.destination / name;
    const std::string known = manifest.value(name, std::string{});
    if (fs::exists(file) && !known.empty() && sha256_file(file) == known) {
      report.skipped.push_back(file);
      continue;
    }

    const std::string url = expand_url(ep.url_template, ep.site_id, month);
    const std::string label = detail::format("%04d-%02u", static_cast<int>(month.year()),
                                             static_cast<unsigned>(month.month()));
    if (request.offline) {
      failures.push_back(label + " " + url + ": offline");
      continue;
    }

    HttpResult res;
    for (int attempt = 1; attempt <= ep.attempts; ++attempt) {
      res = get(url);
      if (res.status >= 200 && res.status < 300) break;
      if (res.status >= 400 && res.status < 500) break;
      if (attempt < ep.attempts) {
        const double wait = ep.backoff_seconds * std::pow(2.0, attempt - 1);
        spdlog::warn("fetch {}: attempt {} failed ({}), retrying in {:.2f}s", url, attempt,
                     res.status ? std::to_string(res.status) : res.error, wait);
        std::this_thread::sleep_for(std::chrono::duration<double>(wait));
      }
    }
    if (!(res.status >= 200 && res.status < 300)) {
      failures.push_back(label + " " + url + ": " +
                         (res.status ? "HTTP " + std::to_string(res.status) : res.error));
      continue;
    }

    const std::string hash = sha256_hex(res.body);
    if (!known.empty() && hash != known) {
      report.warnings.push_back("stale: " + name + " content changed since last download");
      spdlog::warn("fetch: {} content changed since last download", name);
    }
    {
      std::ofstream out(file, std::ios::binary);
      if (!out) throw IoError("cannot write " + file.string());
      out << res.body;
    }
    manifest[name] = hash;
    write_manifest(manifest_path, manifest);
    report.downloaded.push_back(file);
  }

  if (!failures.empty()) {
    std::string msg = "fetch failed for " + std::to_string(failures.size()) + " month(s):";
    for (const auto& f : failures) msg += "\n  missing " + f;
    msg += "\ncompleted: " + std::to_string(report.downloaded.size()) + " downloaded, " +
           std::to_string(report.skipped.size()) + " already present";
    throw FetchError(msg);
  }
  return report;
}

}  // namespace solclust
