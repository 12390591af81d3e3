// Copyright 2026 The twinfm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace twin {

// All twin timestamps are UTC with one-second resolution.
using Timestamp = std::chrono::sys_seconds;
using Date = std::chrono::sys_days;
using Clock = std::function<Timestamp()>;

Timestamp system_now();

inline std::int64_t epoch_seconds(Timestamp t) { return t.time_since_epoch().count(); }
inline Timestamp from_epoch(std::int64_t s) { return Timestamp{std::chrono::seconds{s}}; }

// "YYYY-MM-DDTHH:MM:SSZ". Parsing also accepts fractional seconds
// (truncated) and numeric offsets, which are folded into UTC.
std::string format_rfc3339(Timestamp t);
Timestamp parse_rfc3339(std::string_view text);

// "YYYY-MM-DD"
std::string format_date(Date d);
Date parse_date(std::string_view text);

// Accepts either a calendar date (midnight UTC) or a full RFC 3339 timestamp.
Timestamp parse_time_arg(std::string_view text);

std::int64_t seconds_of_day(Timestamp t);

// Manually advanced clock for deterministic tests and scripted scenarios.
class SteppingClock {
 public:
  explicit SteppingClock(Timestamp start, std::chrono::seconds step = std::chrono::seconds{0})
      : now_(start), step_(step) {}

  Timestamp operator()() {
    Timestamp t = now_;
    now_ += step_;
    return t;
  }

 private:
  Timestamp now_;
  std::chrono::seconds step_;
};

}  // namespace twin
