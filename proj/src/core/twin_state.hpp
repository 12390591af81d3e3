// Copyright 2026 The twinfm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "alarm_rules.hpp"
#include "event_log.hpp"
#include "model.hpp"

namespace twin {

// Allowed job status edges.
bool transition_allowed(JobStatus from, JobStatus to);

// Materialized view of the event log. Everything the twin knows is here and
// is reproduced exactly by replaying the log; `apply` is the only mutator.
class TwinState {
 public:
  std::uint64_t last_seq = 0;

  std::map<std::string, SpaceRecord> spaces;          // room_tag
  std::map<std::string, EquipmentItem> equipment;     // augment_id_instance
  std::map<std::string, DocumentMeta> documents;      // doc_id
  std::map<std::string, SensorSpec> sensors;          // sensor_id
  std::map<std::string, AlarmRule> rules;             // sensor_id
  std::map<std::string, RuleState> rule_states;       // sensor_id
  std::map<std::string, std::vector<SensorReading>> readings;  // sensor_id, commit order
  std::map<std::string, AlarmRecord> alarms;          // alarm_id
  std::map<std::string, MaintenancePolicy> policies;  // policy_id
  std::map<std::string, MaintenanceJob> jobs;         // job_id

  // Validates the event against the current state, then applies it.
  // Throws CorruptLog (or a more specific code) without mutating on failure.
  void apply(const TwinEvent& event);

  json to_json() const;
  static TwinState from_json(const json& snapshot);
  std::string serialize() const { return to_json().dump(); }

  // Dangling references or broken uniqueness; empty when consistent.
  std::vector<std::string> integrity_violations() const;

  // Lookups.
  const EquipmentItem* find_equipment(const std::string& id) const;
  const SpaceRecord* find_space(const std::string& tag) const;
  const SensorSpec* find_sensor(const std::string& id) const;
  std::vector<const SensorSpec*> sensors_of(const std::string& equipment_id) const;
  std::optional<std::string> sensor_for(const std::string& equipment_id, SensorKind kind) const;
  std::optional<std::string> active_alarm_for(const std::string& sensor_id) const;
  std::vector<const EquipmentItem*> equipment_of_type(const std::string& omniclass_type) const;
  bool has_preventive_job(const std::string& policy_id, Date occurrence, const std::string& target) const;
  std::size_t reading_count() const { return reading_count_; }

  std::string next_alarm_id() const;
  std::string next_job_id() const;
  std::string next_document_id() const;

 private:
  void rebuild_indexes();

  std::map<std::string, std::set<std::string>> sensors_by_equipment_;
  std::map<std::pair<std::string, SensorKind>, std::string> sensor_by_binding_;
  std::map<std::string, std::string> active_alarm_by_sensor_;
  std::set<std::tuple<std::string, Date, std::string>> preventive_keys_;
  std::size_t reading_count_ = 0;
};

// Full replay; seqs must start at 1. Throws GapInSequence.
TwinState replay(const std::vector<TwinEvent>& events);

// Snapshot plus the events after it.
TwinState replay(TwinState snapshot, const std::vector<TwinEvent>& tail);

}  // namespace twin
