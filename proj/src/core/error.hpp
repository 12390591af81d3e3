// Copyright 2026 The twinfm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace twin {

// Numeric values are part of the C ABI (see include/twin/twin.h); append only.
enum class Errc : int {
  ok = 0,
  invalid_argument = 1,
  io = 2,
  internal = 3,
  // twin-graph
  malformed_category = 10,
  duplicate_tag_conflict = 11,
  unknown_space = 12,
  unknown_equipment = 13,
  gap_in_sequence = 14,
  unknown_event_kind = 15,
  corrupt_log = 16,
  // inventory
  malformed_code = 20,
  id_collision = 21,
  file_unreadable = 22,
  header_mismatch = 23,
  manifest_mismatch = 24,
  // scan plan
  degenerate_floor = 30,
  invalid_floor = 31,
  invalid_plan = 32,
  // telemetry
  interval_out_of_range = 40,
  invalid_sensor_spec = 41,
  off_grid_timestamp = 42,
  no_sensors = 43,
  unbound_sensor = 44,
  malformed_payload = 45,
  unit_mismatch = 46,
  duplicate_binding = 47,
  malformed_topic = 48,
  // alarms
  sensor_mismatch = 50,
  unknown_alarm = 51,
  illegal_state = 52,
  // maintenance
  unresolved_target = 60,
  bad_frequency = 61,
  inverted_horizon = 62,
  empty_description = 63,
  illegal_transition = 64,
  unknown_job = 65,
  empty_comment = 66,
  policy_conflict = 67,
  // reporting
  inverted_window = 70,
  unknown_system = 71,
  unknown_metric = 72,
  // service
  port_in_use = 80,
  bad_filter = 81,
  not_found = 82,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace twin
