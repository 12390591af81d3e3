// Copyright 2026 The twinfm Authors
// SPDX-License-Identifier: Apache-2.0

#include "time.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>

#include "error.hpp"

namespace twin {

namespace {

using namespace std::chrono;

int read_digits(std::string_view text, std::size_t pos, std::size_t count, std::string_view what) {
  if (pos + count > text.size()) {
    fail(Errc::invalid_argument, "truncated " + std::string(what) + ": '" + std::string(text) + "'");
  }
  int value = 0;
  for (std::size_t i = pos; i < pos + count; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      fail(Errc::invalid_argument, "bad " + std::string(what) + ": '" + std::string(text) + "'");
    }
    value = value * 10 + (text[i] - '0');
  }
  return value;
}

void expect_char(std::string_view text, std::size_t pos, char c) {
  if (pos >= text.size() || text[pos] != c) {
    fail(Errc::invalid_argument, "malformed time value: '" + std::string(text) + "'");
  }
}

Date parse_date_prefix(std::string_view text) {
  const int y = read_digits(text, 0, 4, "date");
  expect_char(text, 4, '-');
  const int m = read_digits(text, 5, 2, "date");
  expect_char(text, 7, '-');
  const int d = read_digits(text, 8, 2, "date");
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(m)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) {
    fail(Errc::invalid_argument, "invalid calendar date: '" + std::string(text) + "'");
  }
  return sys_days{ymd};
}

}  // namespace

Timestamp system_now() { return floor<seconds>(system_clock::now()); }

std::string format_rfc3339(Timestamp t) {
  const auto day_point = floor<days>(t);
  const year_month_day ymd{day_point};
  const hh_mm_ss hms{t - day_point};
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02ld:%02ld:%02lldZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<long>(hms.hours().count()), static_cast<long>(hms.minutes().count()),
                static_cast<long long>(hms.seconds().count()));
  return buf;
}

Timestamp parse_rfc3339(std::string_view text) {
  const Date d = parse_date_prefix(text);
  if (text.size() < 11 || (text[10] != 'T' && text[10] != 't' && text[10] != ' ')) {
    fail(Errc::invalid_argument, "missing time part: '" + std::string(text) + "'");
  }
  const int hh = read_digits(text, 11, 2, "time");
  expect_char(text, 13, ':');
  const int mm = read_digits(text, 14, 2, "time");
  expect_char(text, 16, ':');
  const int ss = read_digits(text, 17, 2, "time");
  if (hh > 23 || mm > 59 || ss > 60) {
    fail(Errc::invalid_argument, "time out of range: '" + std::string(text) + "'");
  }
  std::size_t pos = 19;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    const std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) fail(Errc::invalid_argument, "empty fraction: '" + std::string(text) + "'");
  }
  long offset = 0;
  if (pos < text.size() && (text[pos] == 'Z' || text[pos] == 'z')) {
    ++pos;
  } else if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    const long sign = text[pos] == '-' ? -1 : 1;
    const int oh = read_digits(text, pos + 1, 2, "offset");
    expect_char(text, pos + 3, ':');
    const int om = read_digits(text, pos + 4, 2, "offset");
    offset = sign * (oh * 3600L + om * 60L);
    pos += 6;
  } else {
    fail(Errc::invalid_argument, "missing UTC offset: '" + std::string(text) + "'");
  }
  if (pos != text.size()) {
    fail(Errc::invalid_argument, "trailing characters in timestamp: '" + std::string(text) + "'");
  }
  return Timestamp{d} + hours{hh} + minutes{mm} + seconds{ss} - seconds{offset};
}

std::string format_date(Date d) {
  const year_month_day ymd{d};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

Date parse_date(std::string_view text) {
  if (text.size() != 10) {
    fail(Errc::invalid_argument, "expected YYYY-MM-DD, got '" + std::string(text) + "'");
  }
  return parse_date_prefix(text);
}

Timestamp parse_time_arg(std::string_view text) {
  if (text.size() == 10) return Timestamp{parse_date(text)};
  return parse_rfc3339(text);
}

std::int64_t seconds_of_day(Timestamp t) {
  return (t - floor<days>(t)).count();
}

}  // namespace twin
