// Copyright 2026 The twinfm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "twin_state.hpp"

namespace twin {

inline constexpr std::array<std::string_view, 10> kDashboardSystems = {
    "ahu",       "drinking_fountain", "electrical_panel", "elevator",     "generator",
    "lighting",  "temperature",       "transformer",      "water_closet", "water_pressure"};

enum class Aggregation { mean, sum, last, max };

template <>
struct EnumNames<Aggregation> {
  static constexpr auto values = std::to_array<std::pair<Aggregation, std::string_view>>(
      {{Aggregation::mean, "mean"}, {Aggregation::sum, "sum"}, {Aggregation::last, "last"}, {Aggregation::max, "max"}});
};

// A dashboard metric draws on every sensor of `kind` bound to equipment whose
// Omniclass type code is one of `types`. Units are display hints only.
struct MetricDef {
  std::string name;
  SensorKind kind = SensorKind::temperature;
  std::vector<std::string> types;
  Aggregation aggregation = Aggregation::mean;
  std::string unit;
};

struct SystemDef {
  std::string name;
  std::string title;
  std::vector<MetricDef> metrics;

  const MetricDef* find(std::string_view metric) const;
};

struct MetricRegistry {
  std::vector<SystemDef> systems;  // registry order

  // Throws UnknownSystem.
  const SystemDef& system(std::string_view name) const;
};

// Throws UnknownSystem for names outside kDashboardSystems, InvalidArgument
// for malformed entries.
MetricRegistry metric_registry_from_json(const json& j);
MetricRegistry load_metric_registry(const std::filesystem::path& file);

struct ReportWindow {
  Timestamp from{};
  Timestamp to{};
  std::int64_t bucket_s = 3600;
};

// Reports cover the half-open window [from, to). Throws InvertedWindow when
// from >= to, InvalidArgument when bucket_s is not in (0, to - from].
void validate_window(const ReportWindow& window, bool check_bucket);

struct SeriesPoint {
  Timestamp bucket_start{};
  std::optional<double> value;
  std::int64_t sample_count = 0;
};

struct DashboardSeries {
  std::string system;
  std::string metric;
  Aggregation aggregation = Aggregation::mean;
  std::string unit;
  std::int64_t bucket_s = 0;
  std::vector<SeriesPoint> points;
};

// Sensor ids feeding a metric, sorted.
std::vector<std::string> metric_sensors(const TwinState& state, const MetricDef& metric);

// Buckets start at the largest epoch multiple of bucket_s not after `from`
// and continue while bucket_start < to. In-bucket readings are ordered by
// (at, sensor_id); mean and sum accumulate left to right in that order, last
// takes the final one. Empty buckets carry a null value.
// Throws UnknownSystem, UnknownMetric, InvertedWindow, InvalidArgument.
DashboardSeries dashboard_series(const TwinState& state, const MetricRegistry& registry, std::string_view system,
                                 std::string_view metric, const ReportWindow& window);

// Jobs created in the window; status as of `to`; discipline of the target
// equipment, or "space" for room jobs. Hours run from created_at to the first
// transition into completed before `to`.
struct MaintenanceSummary {
  std::int64_t total_jobs = 0;
  std::map<std::string, std::int64_t> by_status;
  std::map<std::string, std::int64_t> by_origin;
  std::map<std::string, std::int64_t> by_discipline;
  std::optional<double> mean_hours_open_to_completed;
};

struct EquipmentHealth {
  std::int64_t active_alarm_count = 0;   // raised before `to`, not cleared before `to`
  std::int64_t reading_count = 0;        // in window
  std::optional<double> readings_out_of_range_fraction;
  std::int64_t open_job_count = 0;       // open or ongoing as of `to`
};

struct StaffActivity {
  std::int64_t transitions_performed = 0;
  std::int64_t comments_added = 0;  // comment events; transition notes live in job history
  std::int64_t jobs_completed = 0;  // ongoing -> completed
};

// Status of a job as of `t` (exclusive), replaying its history.
JobStatus status_as_of(const MaintenanceJob& job, Timestamp t);

MaintenanceSummary maintenance_summary(const TwinState& state, const ReportWindow& window);
std::map<std::string, EquipmentHealth> equipment_health(const TwinState& state, const ReportWindow& window);
std::map<std::string, StaffActivity> staff_activity(const TwinState& state, const ReportWindow& window);

json to_json(const DashboardSeries& series);
json to_json(const MaintenanceSummary& summary);
json to_json(const std::map<std::string, EquipmentHealth>& health);
json to_json(const std::map<std::string, StaffActivity>& staff);

// {"window", "maintenance", "health", "staff"}
json full_report(const TwinState& state, const ReportWindow& window);
// Long format: report,key,field,value
std::string full_report_csv(const TwinState& state, const ReportWindow& window);

}  // namespace twin
