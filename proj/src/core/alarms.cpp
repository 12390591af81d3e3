// Copyright 2026 The twinfm Authors
// SPDX-License-Identifier: Apache-2.0

#include "alarms.hpp"

#include <algorithm>
#include <cstdio>

namespace twin {

namespace {

std::string alarm_id(std::size_t n) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "AL-%06zu", n);
  return buf;
}

}  // namespace

ReadingStager::ReadingStager(const TwinState& state) : state_(state), next_alarm_(state.alarms.size() + 1) {}

std::optional<AlarmTransition> ReadingStager::stage(Batch& batch, const SensorReading& reading) {
  auto rule = state_.rules.find(reading.sensor_id);
  if (rule == state_.rules.end()) fail(Errc::unbound_sensor, "no sensor " + reading.sensor_id);
  auto local = rule_states_.find(reading.sensor_id);
  if (local == rule_states_.end()) {
    auto committed = state_.rule_states.find(reading.sensor_id);
    local = rule_states_.emplace(reading.sensor_id, committed == state_.rule_states.end() ? RuleState{}
                                                                                           : committed->second)
                .first;
  }
  const Evaluation ev = evaluate(rule->second, local->second, reading);
  batch.add(EventKind::reading_ingested, reading.at, reading);
  local->second = ev.next;
  if (!ev.transition) return std::nullopt;

  if (*ev.transition == AlarmTransition::raise) {
    const std::string id = alarm_id(next_alarm_++);
    batch.add(EventKind::alarm_raised, reading.at,
              json{{"alarm_id", id}, {"sensor_id", reading.sensor_id}, {"trigger_value", reading.value}});
    active_[reading.sensor_id] = id;
  } else {
    std::optional<std::string> id;
    Timestamp at = reading.at;
    if (auto staged = active_.find(reading.sensor_id); staged != active_.end()) {
      id = staged->second;
      active_.erase(staged);
    } else if (!cleared_[reading.sensor_id]) {
      id = state_.active_alarm_for(reading.sensor_id);
      cleared_[reading.sensor_id] = true;
      // Alarm timestamps stay monotone even when the ack came after the reading time.
      if (id) {
        const AlarmRecord& rec = state_.alarms.at(*id);
        if (rec.acked_at && *rec.acked_at > at) at = *rec.acked_at;
      }
    }
    if (!id) fail(Errc::internal, "rule state active without an alarm for " + reading.sensor_id);
    batch.add(EventKind::alarm_cleared, at, json{{"alarm_id", *id}, {"value", reading.value}});
  }
  return ev.transition;
}

AlarmRecord acknowledge(TwinGraph& graph, const std::string& id, const std::string& actor) {
  if (actor.empty()) fail(Errc::invalid_argument, "actor must not be empty");
  graph.write([&](const TwinState& state, Batch& batch) {
    auto it = state.alarms.find(id);
    if (it == state.alarms.end()) fail(Errc::unknown_alarm, "unknown alarm " + id);
    if (it->second.state != AlarmState::raised) {
      fail(Errc::illegal_state, "alarm " + id + " is " + std::string(to_string(it->second.state)));
    }
    // An ack can never precede the raise.
    const Timestamp at = std::max(graph.now(), it->second.raised_at);
    batch.add(EventKind::alarm_acked, at, json{{"alarm_id", id}, {"actor", actor}});
  });
  return graph.read([&](const TwinState& state) { return state.alarms.at(id); });
}

std::vector<AlarmRecord> active_alarms(const TwinState& state, const AlarmFilter& filter) {
  std::optional<Discipline> discipline;
  if (filter.by == AlarmFilter::By::discipline) {
    discipline = enum_from_string<Discipline>(filter.value);
    if (!discipline) fail(Errc::bad_filter, "unknown discipline '" + filter.value + "'");
  }
  std::vector<AlarmRecord> out;
  for (const auto& [id, alarm] : state.alarms) {
    if (!alarm.active()) continue;
    const SensorSpec* sensor = state.find_sensor(alarm.sensor_id);
    if (filter.by == AlarmFilter::By::equipment && (!sensor || sensor->bound_equipment != filter.value)) continue;
    if (discipline) {
      const EquipmentItem* item = sensor ? state.find_equipment(sensor->bound_equipment) : nullptr;
      if (!item || item->discipline != *discipline) continue;
    }
    out.push_back(alarm);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const AlarmRecord& a, const AlarmRecord& b) { return a.raised_at < b.raised_at; });
  return out;
}

}  // namespace twin
