// Copyright 2026 The twinfm Authors
// SPDX-License-Identifier: Apache-2.0

#include "reporting.hpp"

#include <algorithm>
#include <sstream>

#include "csv.hpp"
#include "omniclass.hpp"

namespace twin {

namespace {

bool in_window(Timestamp t, const ReportWindow& w) { return t >= w.from && t < w.to; }

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string number_text(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

}  // namespace

const MetricDef* SystemDef::find(std::string_view metric) const {
  for (const auto& m : metrics) {
    if (m.name == metric) return &m;
  }
  return nullptr;
}

const SystemDef& MetricRegistry::system(std::string_view name) const {
  for (const auto& s : systems) {
    if (s.name == name) return s;
  }
  fail(Errc::unknown_system, "unknown dashboard system '" + std::string(name) + "'");
}

MetricRegistry metric_registry_from_json(const json& j) {
  MetricRegistry registry;
  try {
    for (const auto& entry : j.at("systems")) {
      SystemDef system;
      system.name = entry.at("name").get<std::string>();
      if (std::find(kDashboardSystems.begin(), kDashboardSystems.end(), system.name) == kDashboardSystems.end()) {
        fail(Errc::unknown_system, "metric registry names unknown system '" + system.name + "'");
      }
      system.title = entry.value("title", system.name);
      for (const auto& m : entry.at("metrics")) {
        MetricDef metric;
        metric.name = m.at("name").get<std::string>();
        metric.kind = parse_enum<SensorKind>(m.at("kind").get<std::string>(), Errc::invalid_argument);
        metric.types = m.at("types").get<std::vector<std::string>>();
        metric.aggregation = parse_enum<Aggregation>(m.at("aggregation").get<std::string>(), Errc::invalid_argument);
        metric.unit = m.value("unit", "");
        if (metric.types.empty()) fail(Errc::invalid_argument, "metric " + metric.name + " has no equipment types");
        system.metrics.push_back(std::move(metric));
      }
      registry.systems.push_back(std::move(system));
    }
  } catch (const json::exception& e) {
    fail(Errc::invalid_argument, std::string("metric registry: ") + e.what());
  }
  return registry;
}

MetricRegistry load_metric_registry(const std::filesystem::path& file) {
  try {
    return metric_registry_from_json(json::parse(read_text_file(file)));
  } catch (const json::parse_error& e) {
    fail(Errc::invalid_argument, file.string() + ": " + e.what());
  }
}

void validate_window(const ReportWindow& w, bool check_bucket) {
  if (w.from >= w.to) {
    fail(Errc::inverted_window, "window from " + format_rfc3339(w.from) + " is not before " + format_rfc3339(w.to));
  }
  if (check_bucket && (w.bucket_s <= 0 || w.bucket_s > epoch_seconds(w.to) - epoch_seconds(w.from))) {
    fail(Errc::invalid_argument, "bucket must be positive and no longer than the window");
  }
}

std::vector<std::string> metric_sensors(const TwinState& state, const MetricDef& metric) {
  std::vector<std::string> out;
  for (const auto& [id, spec] : state.sensors) {
    if (spec.kind != metric.kind) continue;
    const EquipmentItem* item = state.find_equipment(spec.bound_equipment);
    if (!item) continue;
    const bool match = std::any_of(metric.types.begin(), metric.types.end(), [&](const std::string& code) {
      return same_omniclass_code(item->omniclass_type, code);
    });
    if (match) out.push_back(id);
  }
  return out;
}

DashboardSeries dashboard_series(const TwinState& state, const MetricRegistry& registry, std::string_view system_name,
                                 std::string_view metric_name, const ReportWindow& window) {
  const SystemDef& system = registry.system(system_name);
  const MetricDef* metric = system.find(metric_name);
  if (!metric) {
    fail(Errc::unknown_metric, "system " + system.name + " has no metric '" + std::string(metric_name) + "'");
  }
  validate_window(window, true);

  DashboardSeries series{system.name, metric->name, metric->aggregation, metric->unit, window.bucket_s, {}};
  const std::int64_t b = window.bucket_s;
  const std::int64_t from = epoch_seconds(window.from);
  const std::int64_t to = epoch_seconds(window.to);
  std::int64_t first = from / b * b;
  if (first > from) first -= b;  // floor for negative epochs
  const auto n = static_cast<std::size_t>((to - first + b - 1) / b);

  std::vector<std::vector<const SensorReading*>> buckets(n);
  for (const auto& id : metric_sensors(state, *metric)) {
    auto it = state.readings.find(id);
    if (it == state.readings.end()) continue;
    for (const auto& r : it->second) {
      if (!in_window(r.at, window)) continue;
      buckets[static_cast<std::size_t>((epoch_seconds(r.at) - first) / b)].push_back(&r);
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    auto& in = buckets[i];
    std::sort(in.begin(), in.end(), [](const SensorReading* x, const SensorReading* y) {
      return x->at != y->at ? x->at < y->at : x->sensor_id < y->sensor_id;
    });
    SeriesPoint point{from_epoch(first + static_cast<std::int64_t>(i) * b), std::nullopt,
                      static_cast<std::int64_t>(in.size())};
    if (!in.empty()) {
      double acc = 0.0;
      switch (metric->aggregation) {
        case Aggregation::mean:
        case Aggregation::sum:
          for (const auto* r : in) acc += r->value;
          if (metric->aggregation == Aggregation::mean) acc /= static_cast<double>(in.size());
          break;
        case Aggregation::last:
          acc = in.back()->value;
          break;
        case Aggregation::max:
          acc = in.front()->value;
          for (const auto* r : in) acc = std::max(acc, r->value);
          break;
      }
      point.value = acc;
    }
    series.points.push_back(point);
  }
  return series;
}

JobStatus status_as_of(const MaintenanceJob& job, Timestamp t) {
  JobStatus status = JobStatus::open;
  for (const auto& h : job.history) {
    if (h.at < t) status = h.to;
  }
  return status;
}

MaintenanceSummary maintenance_summary(const TwinState& state, const ReportWindow& window) {
  validate_window(window, false);
  MaintenanceSummary out;
  for (const auto& [v, name] : EnumNames<JobStatus>::values) out.by_status[std::string(name)] = 0;
  for (const auto& [v, name] : EnumNames<JobOrigin>::values) out.by_origin[std::string(name)] = 0;
  for (const auto& [v, name] : EnumNames<Discipline>::values) out.by_discipline[std::string(name)] = 0;
  out.by_discipline["space"] = 0;

  double hours = 0.0;
  std::int64_t completed = 0;
  for (const auto& [id, job] : state.jobs) {
    if (!in_window(job.created_at, window)) continue;
    ++out.total_jobs;
    ++out.by_status[std::string(to_string(status_as_of(job, window.to)))];
    ++out.by_origin[std::string(to_string(job.origin))];
    if (job.target_kind == TargetKind::space) {
      ++out.by_discipline["space"];
    } else if (const EquipmentItem* item = state.find_equipment(job.target)) {
      ++out.by_discipline[std::string(to_string(item->discipline))];
    }
    for (const auto& h : job.history) {
      if (h.at >= window.to) break;
      if (h.to == JobStatus::completed) {
        hours += static_cast<double>(epoch_seconds(h.at) - epoch_seconds(job.created_at)) / 3600.0;
        ++completed;
        break;
      }
    }
  }
  if (completed > 0) out.mean_hours_open_to_completed = hours / static_cast<double>(completed);
  return out;
}

std::map<std::string, EquipmentHealth> equipment_health(const TwinState& state, const ReportWindow& window) {
  validate_window(window, false);
  std::map<std::string, EquipmentHealth> out;
  for (const auto& [id, item] : state.equipment) {
    EquipmentHealth h;
    std::int64_t outside = 0;
    for (const SensorSpec* spec : state.sensors_of(id)) {
      const AlarmRule& rule = state.rules.at(spec->sensor_id);
      if (auto it = state.readings.find(spec->sensor_id); it != state.readings.end()) {
        for (const auto& r : it->second) {
          if (!in_window(r.at, window)) continue;
          ++h.reading_count;
          if (!rule.in_range(r.value)) ++outside;
        }
      }
    }
    if (h.reading_count > 0) {
      h.readings_out_of_range_fraction = static_cast<double>(outside) / static_cast<double>(h.reading_count);
    }
    out[id] = h;
  }
  for (const auto& [id, alarm] : state.alarms) {
    if (alarm.raised_at >= window.to) continue;
    if (alarm.cleared_at && *alarm.cleared_at < window.to) continue;
    if (const SensorSpec* spec = state.find_sensor(alarm.sensor_id)) ++out[spec->bound_equipment].active_alarm_count;
  }
  for (const auto& [id, job] : state.jobs) {
    if (job.target_kind != TargetKind::equipment || job.created_at >= window.to) continue;
    const JobStatus s = status_as_of(job, window.to);
    if (s == JobStatus::open || s == JobStatus::ongoing) ++out[job.target].open_job_count;
  }
  return out;
}

std::map<std::string, StaffActivity> staff_activity(const TwinState& state, const ReportWindow& window) {
  validate_window(window, false);
  std::map<std::string, StaffActivity> out;
  for (const auto& [id, job] : state.jobs) {
    for (const auto& h : job.history) {
      if (!in_window(h.at, window)) continue;
      auto& a = out[h.actor];
      ++a.transitions_performed;
      if (h.from == JobStatus::ongoing && h.to == JobStatus::completed) ++a.jobs_completed;
    }
    for (const auto& c : job.comments) {
      if (in_window(c.at, window)) ++out[c.actor].comments_added;
    }
  }
  return out;
}

json to_json(const DashboardSeries& s) {
  json points = json::array();
  for (const auto& p : s.points) {
    points.push_back(json{{"bucket_start", format_rfc3339(p.bucket_start)},
                          {"value", optional_number(p.value)},
                          {"sample_count", p.sample_count}});
  }
  return json{{"system", s.system},      {"metric", s.metric},     {"aggregation", s.aggregation},
              {"unit", s.unit},          {"bucket_s", s.bucket_s}, {"points", points}};
}

json to_json(const MaintenanceSummary& m) {
  return json{{"total_jobs", m.total_jobs},
              {"by_status", m.by_status},
              {"by_origin", m.by_origin},
              {"by_discipline", m.by_discipline},
              {"mean_hours_open_to_completed", optional_number(m.mean_hours_open_to_completed)}};
}

json to_json(const std::map<std::string, EquipmentHealth>& health) {
  json out = json::object();
  for (const auto& [id, h] : health) {
    out[id] = json{{"active_alarm_count", h.active_alarm_count},
                   {"reading_count", h.reading_count},
                   {"readings_out_of_range_fraction", optional_number(h.readings_out_of_range_fraction)},
                   {"open_job_count", h.open_job_count}};
  }
  return out;
}

json to_json(const std::map<std::string, StaffActivity>& staff) {
  json out = json::object();
  for (const auto& [actor, a] : staff) {
    out[actor] = json{{"transitions_performed", a.transitions_performed},
                      {"comments_added", a.comments_added},
                      {"jobs_completed", a.jobs_completed}};
  }
  return out;
}

json full_report(const TwinState& state, const ReportWindow& window) {
  return json{{"window", {{"from", format_rfc3339(window.from)}, {"to", format_rfc3339(window.to)}}},
              {"maintenance", to_json(maintenance_summary(state, window))},
              {"health", to_json(equipment_health(state, window))},
              {"staff", to_json(staff_activity(state, window))}};
}

std::string full_report_csv(const TwinState& state, const ReportWindow& window) {
  std::string out = csv_line({"report", "key", "field", "value"}) + "\n";
  auto row = [&](const std::string& report, const std::string& key, const std::string& field,
                 const std::string& value) { out += csv_line({report, key, field, value}) + "\n"; };
  const auto m = maintenance_summary(state, window);
  row("maintenance", "", "total_jobs", std::to_string(m.total_jobs));
  for (const auto& [k, v] : m.by_status) row("maintenance", "status", k, std::to_string(v));
  for (const auto& [k, v] : m.by_origin) row("maintenance", "origin", k, std::to_string(v));
  for (const auto& [k, v] : m.by_discipline) row("maintenance", "discipline", k, std::to_string(v));
  row("maintenance", "", "mean_hours_open_to_completed",
      m.mean_hours_open_to_completed ? number_text(*m.mean_hours_open_to_completed) : "");
  for (const auto& [id, h] : equipment_health(state, window)) {
    row("health", id, "active_alarm_count", std::to_string(h.active_alarm_count));
    row("health", id, "reading_count", std::to_string(h.reading_count));
    row("health", id, "readings_out_of_range_fraction",
        h.readings_out_of_range_fraction ? number_text(*h.readings_out_of_range_fraction) : "");
    row("health", id, "open_job_count", std::to_string(h.open_job_count));
  }
  for (const auto& [actor, a] : staff_activity(state, window)) {
    row("staff", actor, "transitions_performed", std::to_string(a.transitions_performed));
    row("staff", actor, "comments_added", std::to_string(a.comments_added));
    row("staff", actor, "jobs_completed", std::to_string(a.jobs_completed));
  }
  return out;
}

}  // namespace twin
