// Copyright 2026 The twinfm Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>

#include "doctest.h"
#include "folds.hpp"
#include "maintenance.hpp"
#include "test_support.hpp"

using namespace twin;
using namespace twin::testing;

namespace {

ReportWindow window(const char* from, const char* to, std::int64_t bucket = 3600) {
  return ReportWindow{T(from), T(to), bucket};
}

std::map<std::string, std::int64_t> nonzero(const std::map<std::string, std::int64_t>& m) {
  std::map<std::string, std::int64_t> out;
  for (const auto& [k, v] : m) {
    if (v != 0) out[k] = v;
  }
  return out;
}

void push(TwinGraph& g, const std::string& eq, const char* kind, Timestamp at, double v, const char* unit) {
  ingest(g, "pgb", "twin/pgb/" + eq + "/" + kind,
         json{{"at", format_rfc3339(at)}, {"value", v}, {"unit", unit}}.dump());
}

// Two room thermometers (EQ-00006, EQ-00007) feeding the temperature dashboard.
std::unique_ptr<TwinGraph> thermometer_room() {
  auto g = std::make_unique<TwinGraph>(memory_options());
  small_building(*g);
  for (int i = 0; i < 2; ++i) upsert_equipment(*g, item("23-33 41 13 Temperature Sensors", "Room 101"));
  for (const char* eq : {"EQ-00006", "EQ-00007"}) {
    bind_sensor(*g, eq, spec(SensorKind::temperature, 300, 68, 76, SimProfile{72, 3, 1.5}));
  }
  return g;
}

}  // namespace

TEST_CASE("reporting: window validation") {
  TwinState s;
  CHECK(code_of([&] { maintenance_summary(s, window("2024-03-02T00:00:00Z", "2024-03-01T00:00:00Z")); }) ==
        Errc::inverted_window);
  CHECK(code_of([&] { maintenance_summary(s, window("2024-03-01T00:00:00Z", "2024-03-01T00:00:00Z")); }) ==
        Errc::inverted_window);
  CHECK(code_of([&] { validate_window(window("2024-03-01T00:00:00Z", "2024-03-01T01:00:00Z", 0), true); }) ==
        Errc::invalid_argument);
  CHECK(code_of([&] { validate_window(window("2024-03-01T00:00:00Z", "2024-03-01T01:00:00Z", 7200), true); }) ==
        Errc::invalid_argument);
}

TEST_CASE("reporting: maintenance_summary with no jobs") {
  TwinGraph g(memory_options());
  small_building(g);
  auto m = maintenance_summary(*g.snapshot(), window("2024-01-01T00:00:00Z", "2025-01-01T00:00:00Z"));
  CHECK(m.total_jobs == 0);
  CHECK(nonzero(m.by_status).empty());
  CHECK_FALSE(m.mean_hours_open_to_completed);
  CHECK(to_json(m).at("mean_hours_open_to_completed").is_null());
}

TEST_CASE("reporting: maintenance_summary equals a fold over the event log") {
  TwinGraph g(memory_options(T("2024-03-01T08:00:00Z"), 900));
  small_building(g);
  std::vector<std::string> ids;
  ids.push_back(create_reactive_job(g, "EQ-00001", "belt noise").job_id);
  ids.push_back(create_reactive_job(g, "EQ-00004", "door fault").job_id);
  ids.push_back(create_reactive_job(g, "Restroom A", "spill cleanup").job_id);
  ids.push_back(create_reactive_job(g, "EQ-00005", "flicker").job_id);
  ids.push_back(create_reactive_job(g, "Room 101", "vacuum").job_id);
  transition(g, ids[0], JobStatus::ongoing, "tech-01");
  transition(g, ids[0], JobStatus::completed, "tech-01", "belt replaced");
  transition(g, ids[1], JobStatus::ongoing, "tech-02");
  transition(g, ids[2], JobStatus::ongoing, "cust-01");
  transition(g, ids[2], JobStatus::completed, "cust-01");
  transition(g, ids[2], JobStatus::verified, "fm-01");
  transition(g, ids[1], JobStatus::completed, "tech-02");
  transition(g, ids[1], JobStatus::ongoing, "fm-01", "door still sticks");
  transition(g, ids[1], JobStatus::completed, "tech-02");
  add_comment(g, ids[3], "tech-03", "parts ordered");

  const auto events = g.events_since(0);
  const auto state = g.snapshot();
  const std::vector<ReportWindow> windows = {
      window("2024-03-01T00:00:00Z", "2024-03-02T00:00:00Z"),  // everything
      window("2024-03-01T08:20:00Z", "2024-03-01T10:10:00Z"),  // some created, some transitions cut off
      window("2024-03-01T08:00:00Z", "2024-03-01T09:00:00Z"),
      window("2024-02-01T00:00:00Z", "2024-02-02T00:00:00Z"),  // before all events
  };
  for (const auto& w : windows) {
    const auto got = maintenance_summary(*state, w);
    const auto want = oracle::fold_summary(events, w.from, w.to);
    CAPTURE(format_rfc3339(w.from));
    CHECK(got.total_jobs == want.total);
    CHECK(nonzero(got.by_status) == want.by_status);
    CHECK(nonzero(got.by_origin) == want.by_origin);
    CHECK(nonzero(got.by_discipline) == want.by_discipline);
    CHECK(got.mean_hours_open_to_completed == want.mean_hours);
  }
  const auto all = maintenance_summary(*state, windows[0]);
  CHECK(all.total_jobs == 5);
  CHECK(all.by_discipline.at("space") == 2);
  CHECK(all.by_status.at("completed") == 2);
  CHECK(all.by_status.at("verified") == 1);
  const auto none = maintenance_summary(*state, windows[3]);
  CHECK(none.total_jobs == 0);
  CHECK_FALSE(none.mean_hours_open_to_completed);
}

TEST_CASE("reporting: equipment_health examples") {
  TwinGraph g(memory_options());
  small_building(g);
  bind_sensor(g, "EQ-00001", spec(SensorKind::temperature, 300, 68, 76));
  bind_sensor(g, "EQ-00002", spec(SensorKind::temperature, 300, 68, 76));
  const std::vector<double> values = {70, 71, 80, 72, 73, 60, 74, 75, 90, 76};
  auto t = T("2024-03-01T00:00:00Z");
  for (double v : values) {
    push(g, "EQ-00001", "temperature", t, v, "F");
    push(g, "EQ-00002", "temperature", t, 72, "F");
    t += std::chrono::seconds{300};
  }
  create_reactive_job(g, "EQ-00001", "check sensor");
  const auto w = window("2024-03-01T00:00:00Z", "2024-03-01T01:00:00Z");
  const auto h = equipment_health(*g.snapshot(), w);
  const auto out = std::count_if(values.begin(), values.end(), [](double v) { return v < 68 || v > 76; });
  CHECK(out == 3);
  CHECK(h.at("EQ-00001").reading_count == 10);
  CHECK(h.at("EQ-00001").readings_out_of_range_fraction == 0.3);
  CHECK(h.at("EQ-00001").active_alarm_count == 1);  // the 90 at the end
  CHECK(h.at("EQ-00001").open_job_count == 1);
  CHECK(h.at("EQ-00002").readings_out_of_range_fraction == 0.0);
  CHECK_FALSE(h.at("EQ-00004").readings_out_of_range_fraction);
  CHECK(h.at("EQ-00004").active_alarm_count == 0);
  CHECK(h.at("EQ-00004").reading_count == 0);

  // Half-open: a window ending at the 90 reading excludes it and its alarm.
  const auto early = equipment_health(*g.snapshot(), window("2024-03-01T00:00:00Z", "2024-03-01T00:40:00Z"));
  CHECK(early.at("EQ-00001").reading_count == 8);
  CHECK(early.at("EQ-00001").active_alarm_count == 1);  // raised by 80, not yet cleared
}

TEST_CASE("reporting: staff_activity") {
  TwinGraph g(memory_options(T("2024-03-01T08:00:00Z"), 60));
  small_building(g);
  CHECK(staff_activity(*g.snapshot(), window("2024-03-01T00:00:00Z", "2024-03-02T00:00:00Z")).empty());
  const auto a = create_reactive_job(g, "EQ-00004", "door fault").job_id;
  const auto b = create_reactive_job(g, "Restroom A", "spill").job_id;
  transition(g, a, JobStatus::ongoing, "tech-02");
  transition(g, a, JobStatus::completed, "tech-02", "fixed");
  add_comment(g, a, "tech-02", "hinge replaced");
  transition(g, b, JobStatus::ongoing, "cust-01");
  transition(g, a, JobStatus::verified, "fm-01");
  const auto s = staff_activity(*g.snapshot(), window("2024-03-01T00:00:00Z", "2024-03-02T00:00:00Z"));
  REQUIRE(s.size() == 3);
  CHECK(s.at("tech-02").transitions_performed == 2);
  CHECK(s.at("tech-02").comments_added == 1);
  CHECK(s.at("tech-02").jobs_completed == 1);
  CHECK(s.at("cust-01").jobs_completed == 0);
  CHECK(s.at("fm-01").jobs_completed == 0);  // completed -> verified is not a completion
}

TEST_CASE("reporting: dashboard_series matches a naive recomputation") {
  auto g = thermometer_room();
  run_simulation(*g, {42, T("2024-03-01T00:00:00Z"), 4 * 3600, 0});
  const auto state = g->snapshot();
  const auto w = window("2024-03-01T00:00:00Z", "2024-03-01T04:00:00Z");
  const auto series = dashboard_series(*state, metrics(), "temperature", "room_temperature", w);
  REQUIRE(series.points.size() == 4);
  CHECK(series.aggregation == Aggregation::mean);

  std::int64_t total = 0;
  for (const auto& p : series.points) {
    std::vector<SensorReading> in;
    for (const char* id : {"EQ-00006-temperature", "EQ-00007-temperature"}) {
      for (const auto& r : state->readings.at(id)) {
        if (r.at >= p.bucket_start && r.at < p.bucket_start + std::chrono::seconds{3600}) in.push_back(r);
      }
    }
    std::sort(in.begin(), in.end(), [](const auto& x, const auto& y) {
      return std::tie(x.at, x.sensor_id) < std::tie(y.at, y.sensor_id);
    });
    double sum = 0;
    for (const auto& r : in) sum += r.value;
    CHECK(p.sample_count == static_cast<std::int64_t>(in.size()));
    CHECK(p.sample_count == 24);
    CHECK(p.value == sum / static_cast<double>(in.size()));
    total += p.sample_count;
  }
  // Sample counts partition the raw readings of the window.
  std::int64_t raw = 0;
  for (const auto& [id, list] : state->readings) {
    for (const auto& r : list) raw += (r.at >= w.from && r.at < w.to) ? 1 : 0;
  }
  CHECK(total == raw);

  // Weighted bucket means reproduce the global mean.
  double weighted = 0, global = 0;
  for (const auto& p : series.points) weighted += *p.value * static_cast<double>(p.sample_count);
  for (const auto& [id, list] : state->readings) {
    for (const auto& r : list) global += (r.at >= w.from && r.at < w.to) ? r.value : 0.0;
  }
  CHECK(std::abs(weighted / total - global / raw) < 1e-9);
}

TEST_CASE("reporting: weighted bucket means equal the global mean exactly") {
  auto g = thermometer_room();
  // Integer readings, four per 20-minute bucket, so every mean and product is exact.
  double total = 0;
  int n = 0;
  auto t = T("2024-03-01T00:00:00Z");
  for (int i = 0; i < 24; ++i) {
    const double v = 60 + (i * 7) % 23;
    push(*g, i % 2 ? "EQ-00006" : "EQ-00007", "temperature", t, v, "F");
    total += v;
    ++n;
    if (i % 2) t += std::chrono::seconds{600};
  }
  const auto series =
      dashboard_series(*g->snapshot(), metrics(), "temperature", "room_temperature",
                       window("2024-03-01T00:00:00Z", "2024-03-01T02:00:00Z", 1200));
  REQUIRE(series.points.size() == 6);
  double weighted = 0;
  std::int64_t count = 0;
  for (const auto& p : series.points) {
    REQUIRE(p.sample_count == 4);
    weighted += *p.value * static_cast<double>(p.sample_count);
    count += p.sample_count;
  }
  CHECK(count == n);
  CHECK(weighted / static_cast<double>(count) == total / n);
}

TEST_CASE("reporting: dashboard_series edge cases") {
  auto g = thermometer_room();
  const auto s = g->snapshot();
  const auto empty =
      dashboard_series(*s, metrics(), "temperature", "room_temperature", window("2024-03-01T00:00:00Z", "2024-03-01T03:00:00Z"));
  REQUIRE(empty.points.size() == 3);
  for (const auto& p : empty.points) {
    CHECK(p.sample_count == 0);
    CHECK_FALSE(p.value);
  }
  CHECK(to_json(empty).at("points")[0].at("value").is_null());
  const auto w = window("2024-03-01T00:00:00Z", "2024-03-01T03:00:00Z");
  CHECK(code_of([&] { dashboard_series(*s, metrics(), "boiler", "x", w); }) == Errc::unknown_system);
  CHECK(code_of([&] { dashboard_series(*s, metrics(), "temperature", "wind", w); }) == Errc::unknown_metric);

  // Unaligned windows start at the enclosing bucket.
  const auto shifted = dashboard_series(*s, metrics(), "temperature", "room_temperature",
                                        window("2024-03-01T00:30:00Z", "2024-03-01T02:10:00Z"));
  REQUIRE(shifted.points.size() == 3);
  CHECK(shifted.points[0].bucket_start == T("2024-03-01T00:00:00Z"));
}

TEST_CASE("reporting: every registered metric is served for all ten systems") {
  CHECK(metrics().systems.size() == 10);
  auto g = seeded_graph();
  run_simulation(*g, {42, T("2024-03-01T00:00:00Z"), 3600, 0});
  const auto s = g->snapshot();
  for (const auto& sys : metrics().systems) {
    CAPTURE(sys.name);
    CHECK(std::find(kDashboardSystems.begin(), kDashboardSystems.end(), sys.name) != kDashboardSystems.end());
    for (const auto& m : sys.metrics) {
      CAPTURE(m.name);
      CHECK_FALSE(metric_sensors(*s, m).empty());
      const auto series = dashboard_series(*s, metrics(), sys.name, m.name,
                                           window("2024-03-01T00:00:00Z", "2024-03-01T01:00:00Z"));
      REQUIRE(series.points.size() == 1);
      CHECK(series.points[0].sample_count > 0);
    }
  }
}

TEST_CASE("reporting: reports are pure reads") {
  auto g = seeded_graph();
  run_simulation(*g, {42, T("2024-03-01T00:00:00Z"), 3600, 0});
  generate_all_jobs(*g, D("2024-03-01"), D("2024-03-07"));
  const auto seq = g->last_seq();
  const auto s = g->snapshot();
  const auto w = window("2024-01-01T00:00:00Z", "2024-03-08T00:00:00Z");
  const auto a = full_report(*s, w);
  const auto csv = full_report_csv(*s, w);
  CHECK(full_report(*g->snapshot(), w) == a);
  CHECK(g->last_seq() == seq);
  CHECK(csv.rfind("report,key,field,value\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') > 100);
  CHECK(a.at("maintenance").at("total_jobs").get<int>() > 0);
}

TEST_CASE("reporting: scripted scenario equals the event-log folds") {
  TwinGraph g(memory_options(T("2024-03-01T06:00:00Z"), 600));
  scripted_operations(g);
  const auto state = g.snapshot();
  REQUIRE(state->jobs.size() == 20);
  REQUIRE_FALSE(state->alarms.empty());
  const auto events = g.events_since(0);
  for (const auto& w : {window("2024-03-01T00:00:00Z", "2024-03-02T00:00:00Z"),
                        window("2024-03-01T00:30:00Z", "2024-03-01T01:10:00Z"),
                        window("2024-03-01T01:00:00Z", "2024-03-01T09:00:00Z"),
                        window("2024-03-01T09:00:00Z", "2024-03-01T12:00:00Z")}) {
    CAPTURE(format_rfc3339(w.from));
    const auto m = maintenance_summary(*state, w);
    const auto fm = oracle::fold_summary(events, w.from, w.to);
    CHECK(m.total_jobs == fm.total);
    CHECK(nonzero(m.by_status) == fm.by_status);
    CHECK(nonzero(m.by_origin) == fm.by_origin);
    CHECK(nonzero(m.by_discipline) == fm.by_discipline);
    CHECK(m.mean_hours_open_to_completed == fm.mean_hours);

    const auto h = equipment_health(*state, w);
    const auto fh = oracle::fold_health(events, w.from, w.to);
    REQUIRE(h.size() == fh.size());
    for (const auto& [id, want] : fh) {
      CAPTURE(id);
      const auto& got = h.at(id);
      CHECK(got.reading_count == want.readings);
      CHECK(got.active_alarm_count == want.active_alarms);
      CHECK(got.open_job_count == want.open_jobs);
      if (want.readings == 0) {
        CHECK_FALSE(got.readings_out_of_range_fraction);
      } else {
        CHECK(got.readings_out_of_range_fraction ==
              static_cast<double>(want.outside) / static_cast<double>(want.readings));
      }
    }

    const auto s = staff_activity(*state, w);
    const auto fs = oracle::fold_staff(events, w.from, w.to);
    REQUIRE(s.size() == fs.size());
    for (const auto& [actor, want] : fs) {
      CAPTURE(actor);
      CHECK(s.at(actor).transitions_performed == want.transitions);
      CHECK(s.at(actor).comments_added == want.comments);
      CHECK(s.at(actor).jobs_completed == want.completed);
    }
  }
}
