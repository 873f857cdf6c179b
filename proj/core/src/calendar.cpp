#include "solclust/calendar.hpp"

#include <charconv>
#include <cstdio>

#include "solclust/error.hpp"

namespace solclust {

namespace {

bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

Date parse_date(std::string_view text) {
  int y = 0, m = 0, d = 0;
  bool ok = false;
  if (text.size() == 10 && text[4] == '-' && text[7] == '-') {
    ok = parse_int(text.substr(0, 4), y) && parse_int(text.substr(5, 2), m) &&
         parse_int(text.substr(8, 2), d);
  } else if (text.size() == 10 && text[2] == '/' && text[5] == '/') {
    ok = parse_int(text.substr(0, 2), m) && parse_int(text.substr(3, 2), d) &&
         parse_int(text.substr(6, 4), y);
  }
  Date date{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
            std::chrono::day{static_cast<unsigned>(d)}};
  if (!ok || !date.ok()) {
    throw FormatError("invalid date '" + std::string(text) + "'");
  }
  return date;
}

std::string format_date(const Date& d) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()),
                static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
  return buf;
}

int day_of_year(const Date& d) {
  using namespace std::chrono;
  const sys_days jan1{d.year() / January / 1};
  return (sys_days{d} - jan1).count() + 1;
}

bool is_leap(const Date& d) { return d.year().is_leap(); }

int days_in_year(const Date& d) { return is_leap(d) ? 366 : 365; }

Date add_days(const Date& d, int n) {
  return Date{std::chrono::sys_days{d} + std::chrono::days{n}};
}

int days_between(const Date& a, const Date& b) {
  return (std::chrono::sys_days{b} - std::chrono::sys_days{a}).count();
}

}  // namespace solclust
