// Copyright 2026 The twinfm Authors
// SPDX-License-Identifier: Apache-2.0

#include "telemetry.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <thread>

#include "csv.hpp"

namespace twin {

const KindDefaults& TelemetryConfig::for_kind(SensorKind kind) const {
  auto it = kinds.find(kind);
  if (it == kinds.end()) {
    fail(Errc::invalid_sensor_spec, "no telemetry defaults for kind " + std::string(to_string(kind)));
  }
  return it->second;
}

SensorSpec TelemetryConfig::default_spec(const std::string& equipment_id, SensorKind kind) const {
  const KindDefaults& d = for_kind(kind);
  SensorSpec spec;
  spec.sensor_id = sensor_id_for(equipment_id, kind);
  spec.bound_equipment = equipment_id;
  spec.kind = kind;
  spec.unit = d.unit;
  spec.interval_s = d.interval_s;
  spec.low = d.low;
  spec.high = d.high;
  spec.sim_profile = d.profile;
  spec.live_capable = kind == SensorKind::occupancy;
  return spec;
}

TelemetryConfig telemetry_config_from_json(const json& j) {
  TelemetryConfig config;
  try {
    if (j.contains("alarm_defaults")) {
      const json& a = j.at("alarm_defaults");
      config.alarms.raise_debounce = a.value("raise_debounce", config.alarms.raise_debounce);
      config.alarms.clear_debounce = a.value("clear_debounce", config.alarms.clear_debounce);
    }
    for (const auto& [name, entry] : j.at("kinds").items()) {
      KindDefaults d;
      d.unit = entry.at("unit").get<std::string>();
      d.interval_s = entry.at("interval_s").get<int>();
      const json& range = entry.at("normal_range");
      d.low = range.at(0).get<double>();
      d.high = range.at(1).get<double>();
      if (entry.contains("profile")) d.profile = entry.at("profile").get<SimProfile>();
      config.kinds[parse_enum<SensorKind>(name, Errc::invalid_sensor_spec)] = d;
    }
  } catch (const json::exception& e) {
    fail(Errc::invalid_sensor_spec, std::string("telemetry config: ") + e.what());
  }
  if (config.alarms.raise_debounce < 1 || config.alarms.clear_debounce < 1) {
    fail(Errc::invalid_sensor_spec, "alarm debounces must be >= 1");
  }
  return config;
}

TelemetryConfig load_telemetry_config(const std::filesystem::path& file) {
  try {
    return telemetry_config_from_json(json::parse(read_text_file(file)));
  } catch (const json::parse_error& e) {
    fail(Errc::invalid_sensor_spec, file.string() + ": " + e.what());
  }
}

std::string sensor_id_for(const std::string& equipment_id, SensorKind kind) {
  return equipment_id + "-" + std::string(to_string(kind));
}

void validate_sensor_spec(const SensorSpec& spec) {
  if (spec.interval_s < kMinIntervalSeconds || spec.interval_s > kMaxIntervalSeconds) {
    fail(Errc::interval_out_of_range,
         "interval_s " + std::to_string(spec.interval_s) + " outside [60, 300] for " + spec.sensor_id);
  }
  if (!(spec.low < spec.high)) fail(Errc::invalid_sensor_spec, "normal range needs low < high");
  if (spec.unit.empty()) fail(Errc::invalid_sensor_spec, "unit must not be empty");
  if (spec.sim_profile.noise_sigma < 0.0) fail(Errc::invalid_sensor_spec, "noise_sigma must be >= 0");
}

AlarmRule default_rule(const SensorSpec& spec, const AlarmDefaults& defaults) {
  return AlarmRule{spec.sensor_id, spec.low, spec.high, defaults.raise_debounce, defaults.clear_debounce};
}

BindResult stage_binding(const TwinState& state, Batch& batch, Timestamp at, SensorSpec spec,
                         std::optional<AlarmRule> rule, const AlarmDefaults& defaults) {
  if (!state.find_equipment(spec.bound_equipment)) {
    fail(Errc::unknown_equipment, "unknown equipment " + spec.bound_equipment);
  }
  if (spec.sensor_id.empty()) spec.sensor_id = sensor_id_for(spec.bound_equipment, spec.kind);
  validate_sensor_spec(spec);
  AlarmRule r = rule ? *rule : default_rule(spec, defaults);
  r.sensor_id = spec.sensor_id;
  validate_rule(r);

  if (auto existing = state.sensor_for(spec.bound_equipment, spec.kind); existing && *existing != spec.sensor_id) {
    fail(Errc::duplicate_binding,
         spec.bound_equipment + " already has " + std::string(to_string(spec.kind)) + " sensor " + *existing);
  }
  const SensorSpec* old = state.find_sensor(spec.sensor_id);
  if (old && *old == spec && state.rules.at(spec.sensor_id) == r) return {spec.sensor_id, false};
  batch.add(EventKind::sensor_bound, at, json{{"sensor", spec}, {"rule", r}});
  return {spec.sensor_id, true};
}

std::string bind_sensor(TwinGraph& graph, const std::string& equipment_id, SensorSpec spec,
                        std::optional<AlarmRule> rule, const AlarmDefaults& defaults) {
  spec.bound_equipment = equipment_id;
  return graph.write([&](const TwinState& state, Batch& batch) {
    return stage_binding(state, batch, graph.now(), spec, rule, defaults).sensor_id;
  });
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t noise_key(std::uint64_t seed, std::string_view sensor_id, Timestamp t) {
  std::uint64_t k = splitmix64(seed);
  k = splitmix64(k ^ fnv1a64(sensor_id));
  return splitmix64(k ^ static_cast<std::uint64_t>(epoch_seconds(t)));
}

double uniform_open_closed(std::uint64_t key) {
  return static_cast<double>((key >> 11) + 1) * 0x1.0p-53;
}

double standard_normal(std::uint64_t key) {
  const double u1 = uniform_open_closed(key);
  const double u2 = uniform_open_closed(splitmix64(key));
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

SensorReading next_reading(const SensorSpec& spec, Timestamp t, std::uint64_t seed) {
  if (spec.interval_s <= 0 || epoch_seconds(t) % spec.interval_s != 0) {
    fail(Errc::off_grid_timestamp, format_rfc3339(t) + " is not on the " + std::to_string(spec.interval_s) +
                                       " s grid of " + spec.sensor_id);
  }
  const std::uint64_t key = noise_key(seed, spec.sensor_id, t);
  const SimProfile& p = spec.sim_profile;
  SensorReading r{spec.sensor_id, t, 0.0, ReadingSource::simulated};
  if (spec.kind == SensorKind::occupancy) {
    const auto hour = static_cast<int>(seconds_of_day(t) / 3600);
    const bool occupied = p.occupied_from_hour <= p.occupied_to_hour
                              ? hour >= p.occupied_from_hour && hour < p.occupied_to_hour
                              : hour >= p.occupied_from_hour || hour < p.occupied_to_hour;
    r.value = uniform_open_closed(key) <= (occupied ? p.p_occupied : p.p_unoccupied) ? 1.0 : 0.0;
    return r;
  }
  const double phase = 2.0 * std::numbers::pi * static_cast<double>(seconds_of_day(t)) / 86400.0;
  r.value = p.baseline + p.diurnal_amplitude * std::sin(phase);
  if (p.noise_sigma > 0.0) r.value += p.noise_sigma * standard_normal(key);
  return r;
}

std::vector<Timestamp> grid_times(Timestamp start, std::int64_t window_s, int interval_s) {
  std::vector<Timestamp> out;
  const std::int64_t s = epoch_seconds(start);
  std::int64_t t = s % interval_s == 0 ? s : (s / interval_s + (s > 0 ? 1 : 0)) * interval_s;
  for (; t <= s + window_s; t += interval_s) out.push_back(from_epoch(t));
  return out;
}

std::int64_t expected_reading_count(Timestamp start, std::int64_t window_s, int interval_s) {
  return static_cast<std::int64_t>(grid_times(start, window_s, interval_s).size());
}

Timestamp default_simulation_start(const TwinState& state) {
  std::optional<Timestamp> last;
  for (const auto& [id, list] : state.readings) {
    for (const auto& r : list) {
      if (!last || r.at > *last) last = r.at;
    }
  }
  if (!last) return parse_rfc3339(kDefaultSimulationStart);
  const std::int64_t s = epoch_seconds(*last);
  return from_epoch((s / 3600 + 1) * 3600);
}

SimulationResult run_simulation(TwinGraph& graph, const SimulationOptions& options) {
  if (options.window_s <= 0) fail(Errc::invalid_argument, "simulation window must be positive");
  if (options.speedup < 0.0) fail(Errc::invalid_argument, "speedup must be >= 0");

  const auto state = graph.snapshot();
  if (state->sensors.empty()) fail(Errc::no_sensors, "no sensors bound");
  for (const auto& [id, list] : state->readings) {
    for (const auto& r : list) {
      if (r.at >= options.start) {
        fail(Errc::invalid_argument, "simulation window starts at or before an existing reading of " + id);
      }
    }
  }

  std::vector<SensorReading> stream;
  for (const auto& [id, spec] : state->sensors) {
    for (Timestamp t : grid_times(options.start, options.window_s, spec.interval_s)) {
      stream.push_back(next_reading(spec, t, options.seed));
    }
  }
  std::sort(stream.begin(), stream.end(), [](const SensorReading& a, const SensorReading& b) {
    return a.at != b.at ? a.at < b.at : a.sensor_id < b.sensor_id;
  });

  SimulationResult result;
  result.readings = stream.size();
  auto commit = [&](std::size_t begin, std::size_t end) {
    graph.write([&](const TwinState& s, Batch& batch) {
      ReadingStager stager(s);
      for (std::size_t i = begin; i < end; ++i) {
        if (auto tr = stager.stage(batch, stream[i])) {
          ++(*tr == AlarmTransition::raise ? result.alarms_raised : result.alarms_cleared);
        }
      }
      if (result.first_seq == 0 && !batch.empty()) result.first_seq = s.last_seq + 1;
    });
  };

  if (options.speedup == 0.0) {
    commit(0, stream.size());
  } else {
    const auto wall_start = std::chrono::steady_clock::now();
    std::size_t i = 0;
    while (i < stream.size()) {
      std::size_t j = i;
      while (j < stream.size() && stream[j].at == stream[i].at) ++j;
      const double offset = static_cast<double>(epoch_seconds(stream[i].at) - epoch_seconds(options.start));
      std::this_thread::sleep_until(wall_start + std::chrono::duration<double>(offset / options.speedup));
      commit(i, j);
      i = j;
    }
  }
  result.last_seq = graph.last_seq();
  return result;
}

Topic parse_topic(std::string_view topic) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto slash = topic.find('/', start);
    parts.emplace_back(topic.substr(start, slash == std::string_view::npos ? slash : slash - start));
    if (slash == std::string_view::npos) break;
    start = slash + 1;
  }
  if (parts.size() != 4 || parts[0] != "twin" || parts[1].empty() || parts[2].empty()) {
    fail(Errc::malformed_topic, "topic must be twin/<building>/<augment_id>/<kind>: '" + std::string(topic) + "'");
  }
  auto kind = enum_from_string<SensorKind>(parts[3]);
  if (!kind) fail(Errc::malformed_topic, "unknown sensor kind '" + parts[3] + "'");
  return Topic{parts[1], parts[2], *kind};
}

SensorReading ingest(TwinGraph& graph, const std::string& building_id, std::string_view topic_text,
                     std::string_view payload_text) {
  const Topic topic = parse_topic(topic_text);
  if (topic.building != building_id) {
    fail(Errc::unbound_sensor, "topic names building '" + topic.building + "', this twin is '" + building_id + "'");
  }
  json payload;
  try {
    payload = json::parse(payload_text);
  } catch (const json::parse_error& e) {
    fail(Errc::malformed_payload, std::string("payload is not JSON: ") + e.what());
  }
  if (!payload.is_object()) fail(Errc::malformed_payload, "payload must be a JSON object");
  SensorReading reading;
  reading.source = ReadingSource::live;
  reading.value = require_number(payload, "value");
  if (!std::isfinite(reading.value)) fail(Errc::malformed_payload, "value must be finite");
  reading.at = timestamp_from_json(require_field(payload, "at"));
  const std::string unit = require_string(payload, "unit");

  return graph.write([&](const TwinState& state, Batch& batch) {
    auto sensor_id = state.sensor_for(topic.equipment, topic.kind);
    if (!sensor_id) {
      fail(Errc::unbound_sensor,
           "no " + std::string(to_string(topic.kind)) + " sensor bound to '" + topic.equipment + "'");
    }
    const SensorSpec& spec = state.sensors.at(*sensor_id);
    if (unit != spec.unit) fail(Errc::unit_mismatch, "expected unit '" + spec.unit + "', got '" + unit + "'");
    if (spec.kind == SensorKind::occupancy && reading.value != 0.0 && reading.value != 1.0) {
      fail(Errc::malformed_payload, "occupancy value must be 0 or 1");
    }
    if (auto it = state.readings.find(*sensor_id); it != state.readings.end() && !it->second.empty() &&
                                                   reading.at < it->second.back().at) {
      fail(Errc::malformed_payload, "reading at " + format_rfc3339(reading.at) + " is older than the latest for " +
                                        *sensor_id);
    }
    reading.sensor_id = *sensor_id;
    ReadingStager(state).stage(batch, reading);
    return reading;
  });
}

std::map<SensorKind, SensorReading> latest(const TwinState& state, const std::string& equipment_id) {
  if (!state.find_equipment(equipment_id)) fail(Errc::unknown_equipment, "unknown equipment " + equipment_id);
  std::map<SensorKind, SensorReading> out;
  for (const SensorSpec* spec : state.sensors_of(equipment_id)) {
    auto it = state.readings.find(spec->sensor_id);
    if (it == state.readings.end() || it->second.empty()) continue;
    const SensorReading* best = &it->second.front();
    for (const auto& r : it->second) {
      if (r.at >= best->at) best = &r;
    }
    out[spec->kind] = *best;
  }
  return out;
}

}  // namespace twin
