// Copyright 2026 The twinfm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "alarms.hpp"
#include "twin_graph.hpp"

namespace twin {

struct KindDefaults {
  std::string unit;
  int interval_s = 300;
  double low = 0.0;
  double high = 0.0;
  SimProfile profile;
};

// Per-kind sensor defaults and alarm debounce defaults, read from
// telemetry.json. Values are simulation settings, not measurements.
struct TelemetryConfig {
  std::map<SensorKind, KindDefaults> kinds;
  AlarmDefaults alarms;

  // Throws InvalidSensorSpec when the kind has no entry.
  const KindDefaults& for_kind(SensorKind kind) const;
  SensorSpec default_spec(const std::string& equipment_id, SensorKind kind) const;
};

TelemetryConfig telemetry_config_from_json(const json& j);
TelemetryConfig load_telemetry_config(const std::filesystem::path& file);

// "<equipment>-<kind>"
std::string sensor_id_for(const std::string& equipment_id, SensorKind kind);

// Throws IntervalOutOfRange, InvalidSensorSpec.
void validate_sensor_spec(const SensorSpec& spec);

AlarmRule default_rule(const SensorSpec& spec, const AlarmDefaults& defaults);

struct BindResult {
  std::string sensor_id;
  bool changed = false;
};

// An empty sensor_id becomes sensor_id_for(equipment, kind). Rebinding the
// same sensor with an identical spec and rule appends nothing.
// Throws UnknownEquipment, IntervalOutOfRange, InvalidSensorSpec,
// DuplicateBinding (the equipment already has another sensor of that kind).
BindResult stage_binding(const TwinState& state, Batch& batch, Timestamp at, SensorSpec spec,
                         std::optional<AlarmRule> rule, const AlarmDefaults& defaults);
std::string bind_sensor(TwinGraph& graph, const std::string& equipment_id, SensorSpec spec,
                        std::optional<AlarmRule> rule = std::nullopt, const AlarmDefaults& defaults = {});

// Counter-based generator: every draw is a pure function of its key, so
// streams can be produced in any order.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a64(std::string_view text);
std::uint64_t noise_key(std::uint64_t seed, std::string_view sensor_id, Timestamp t);
double uniform_open_closed(std::uint64_t key);  // (0, 1]
double standard_normal(std::uint64_t key);

// Throws OffGridTimestamp when epoch(t) is not a multiple of interval_s.
SensorReading next_reading(const SensorSpec& spec, Timestamp t, std::uint64_t seed);

// On-grid instants in the closed window [start, start + window_s].
std::vector<Timestamp> grid_times(Timestamp start, std::int64_t window_s, int interval_s);
std::int64_t expected_reading_count(Timestamp start, std::int64_t window_s, int interval_s);

inline constexpr std::string_view kDefaultSimulationStart = "2024-03-01T00:00:00Z";

struct SimulationOptions {
  std::uint64_t seed = 0;
  Timestamp start{};
  std::int64_t window_s = 3600;
  // Simulated seconds per wall second; 0 commits everything at once.
  double speedup = 0.0;
};

struct SimulationResult {
  std::size_t readings = 0;
  std::size_t alarms_raised = 0;
  std::size_t alarms_cleared = 0;
  std::uint64_t first_seq = 0;
  std::uint64_t last_seq = 0;
};

// Commits readings in (timestamp, sensor_id) order and forwards each to the
// alarm rules. Throws NoSensors; InvalidArgument when window_s <= 0 or the
// window starts at or before an existing reading of some sensor.
SimulationResult run_simulation(TwinGraph& graph, const SimulationOptions& options);

// kDefaultSimulationStart, or the first whole hour after the latest reading.
Timestamp default_simulation_start(const TwinState& state);

struct Topic {
  std::string building;
  std::string equipment;
  SensorKind kind = SensorKind::temperature;
};

// "twin/<building>/<augment_id_instance>/<kind>"; throws MalformedTopic.
Topic parse_topic(std::string_view topic);

// Payload {"at": RFC 3339, "value": number, "unit": text}. Commits a live
// reading and its alarm consequences. Throws MalformedTopic, UnboundSensor
// (other building, or no sensor of that kind on the equipment),
// MalformedPayload (including readings older than the sensor's latest),
// UnitMismatch.
SensorReading ingest(TwinGraph& graph, const std::string& building_id, std::string_view topic,
                     std::string_view payload);

// Most recent reading per bound kind. Throws UnknownEquipment.
std::map<SensorKind, SensorReading> latest(const TwinState& state, const std::string& equipment_id);

}  // namespace twin
