#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "solclust/config.hpp"

namespace solclust {

struct HttpResult {
  int status = 0;       // 0: transport failure
  std::string body;
  std::string error;    // transport error text
};

using HttpGet = std::function<HttpResult(const std::string& url)>;

/// cpp-httplib client; https requires OpenSSL support compiled in.
HttpResult http_get(const std::string& url);

struct FetchRequest {
  FetchConfig endpoint;
  std::filesystem::path destination;
  bool offline = false;
};

struct FetchReport {
  std::vector<std::filesystem::path> downloaded;
  std::vector<std::filesystem::path> skipped;  // present with matching hash
  std::vector<std::string> warnings;
};

/// Downloads one CSV per month into `destination`, named {site}_{YYYYMM}.csv,
/// recording SHA-256 hashes in manifest.json. Files already present with a
/// matching hash are skipped without network access. Transport errors and 5xx
/// responses are retried with exponential backoff; 4xx fails at once. Throws
/// FetchError naming every failed URL and month, after attempting all months.
FetchReport fetch_midc(const FetchRequest& request, const HttpGet& get = http_get);

/// Expands {site}, {begin}, {end} for the month starting at `first_of_month`.
std::string expand_url(const std::string& url_template, const std::string& site, const Date& first_of_month);

}  // namespace solclust
