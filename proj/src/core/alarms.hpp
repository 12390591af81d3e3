// Copyright 2026 The twinfm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twin_graph.hpp"

namespace twin {

struct AlarmDefaults {
  int raise_debounce = 1;
  int clear_debounce = 3;
};

// Stages readings into a batch together with the alarm events they cause.
// Tracks rule states and alarm ids locally so many readings for the same
// sensor can share one transaction.
class ReadingStager {
 public:
  explicit ReadingStager(const TwinState& state);

  // Appends reading_ingested, then alarm_raised or alarm_cleared if the rule
  // transitions. The event time is the reading time.
  std::optional<AlarmTransition> stage(Batch& batch, const SensorReading& reading);

 private:
  const TwinState& state_;
  std::map<std::string, RuleState> rule_states_;
  std::map<std::string, std::string> active_;  // sensor_id -> alarm_id, staged only
  std::map<std::string, bool> cleared_;        // sensor_id -> committed alarm cleared in this batch
  std::size_t next_alarm_;
};

// Throws UnknownAlarm, IllegalState (already acknowledged or cleared).
AlarmRecord acknowledge(TwinGraph& graph, const std::string& alarm_id, const std::string& actor);

struct AlarmFilter {
  enum class By { all, equipment, discipline };
  By by = By::all;
  std::string value;
};

// Raised or acknowledged alarms, sorted by raised_at then alarm_id.
// Throws BadFilter for an unknown discipline name.
std::vector<AlarmRecord> active_alarms(const TwinState& state, const AlarmFilter& filter = {});

}  // namespace twin
