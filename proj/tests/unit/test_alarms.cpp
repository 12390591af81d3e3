// Copyright 2026 The twinfm Authors
// SPDX-License-Identifier: Apache-2.0

#include <random>

#include "alarm_rules.hpp"
#include "alarms.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace twin;
using namespace twin::testing;

namespace {

SensorReading at_value(double v, const std::string& sensor = "s1") {
  return SensorReading{sensor, T("2024-03-01T00:00:00Z"), v, ReadingSource::simulated};
}

// Streams the series through evaluate and records transition indices.
oracle::DebounceMarks stream(const AlarmRule& rule, const std::vector<double>& series) {
  oracle::DebounceMarks m;
  RuleState st;
  for (std::size_t i = 0; i < series.size(); ++i) {
    auto ev = evaluate(rule, st, at_value(series[i], rule.sensor_id));
    st = ev.next;
    if (ev.transition == AlarmTransition::raise) m.raises.push_back(i);
    if (ev.transition == AlarmTransition::clear) m.clears.push_back(i);
  }
  return m;
}

// Building with a bound thermometer on EQ-00001 and EQ-00004 ([68, 76], 1/3).
std::unique_ptr<TwinGraph> thermometers() {
  auto g = std::make_unique<TwinGraph>(memory_options());
  small_building(*g);
  bind_sensor(*g, "EQ-00001", spec(SensorKind::temperature, 300, 68, 76));
  bind_sensor(*g, "EQ-00004", spec(SensorKind::temperature, 300, 68, 76));
  return g;
}

void push(TwinGraph& g, const std::string& eq, const std::string& at, double v) {
  ingest(g, "pgb", "twin/pgb/" + eq + "/temperature", json{{"at", at}, {"value", v}, {"unit", "F"}}.dump());
}

}  // namespace

TEST_CASE("alarms: evaluate examples") {
  const AlarmRule rule{"s1", 68, 76, 1, 3};
  auto hot = evaluate(rule, {}, at_value(80));
  CHECK(hot.transition == AlarmTransition::raise);
  CHECK(hot.next.active);

  auto fine = evaluate(rule, {}, at_value(72));
  CHECK_FALSE(fine.transition);
  CHECK(fine.next == RuleState{0, 1, false});

  // Boundaries are in range.
  CHECK_FALSE(evaluate(rule, {}, at_value(68)).transition);
  CHECK_FALSE(evaluate(rule, {}, at_value(76)).transition);

  const AlarmRule slow{"s1", 68, 76, 3, 3};
  CHECK(stream(slow, {80, 80, 80}).raises == std::vector<std::size_t>{2});
  CHECK(oracle::debounce_scan({80, 80, 80}, 68, 76, 3, 3).raises == std::vector<std::size_t>{2});

  CHECK(code_of([&] { evaluate(rule, {}, at_value(72, "s2")); }) == Errc::sensor_mismatch);
}

TEST_CASE("alarms: evaluate is pure") {
  const AlarmRule rule{"s1", 68, 76, 2, 2};
  const RuleState st{1, 0, false};
  const auto a = evaluate(rule, st, at_value(90));
  const auto b = evaluate(rule, st, at_value(90));
  CHECK(a.transition == b.transition);
  CHECK(a.next == b.next);
  CHECK(st == RuleState{1, 0, false});
}

TEST_CASE("alarms: streaming debounce matches the whole-series oracle") {
  std::mt19937_64 rng(20260301);
  std::uniform_int_distribution<int> len(0, 60), deb(1, 5), pick(0, 9);
  for (int trial = 0; trial < 1000; ++trial) {
    const AlarmRule rule{"s1", 68, 76, deb(rng), deb(rng)};
    std::vector<double> series(static_cast<std::size_t>(len(rng)));
    // Mostly runs of one side so debounces of several samples get exercised.
    bool out = false;
    for (auto& v : series) {
      if (pick(rng) < 3) out = !out;
      const int k = pick(rng);
      v = out ? (k % 2 ? 76.5 + k : 67.5 - k) : (k == 0 ? 68.0 : k == 9 ? 76.0 : 68.0 + 0.8 * k);
    }
    const auto got = stream(rule, series);
    const auto want = oracle::debounce_scan(series, rule.low, rule.high, rule.raise_debounce, rule.clear_debounce);
    REQUIRE(got.raises == want.raises);
    REQUIRE(got.clears == want.clears);
  }
}

TEST_CASE("alarms: lifecycle through the graph") {
  auto g = thermometers();
  push(*g, "EQ-00001", "2024-03-01T00:00:00Z", 80);
  auto s = g->snapshot();
  REQUIRE(s->alarms.size() == 1);
  const auto& raised = s->alarms.begin()->second;
  CHECK(raised.alarm_id == "AL-000001");
  CHECK(raised.state == AlarmState::raised);
  CHECK(raised.trigger_value == 80);
  CHECK(raised.raised_at == T("2024-03-01T00:00:00Z"));

  auto acked = acknowledge(*g, "AL-000001", "fm-01");
  CHECK(acked.state == AlarmState::acknowledged);
  CHECK(acked.actor == "fm-01");
  CHECK(acked.acked_at.has_value());
  CHECK(code_of([&] { acknowledge(*g, "AL-000001", "fm-01"); }) == Errc::illegal_state);
  CHECK(code_of([&] { acknowledge(*g, "AL-999999", "fm-01"); }) == Errc::unknown_alarm);

  // Still hot: no second alarm for the same sensor.
  push(*g, "EQ-00001", "2024-03-01T00:05:00Z", 81);
  CHECK(g->snapshot()->alarms.size() == 1);

  push(*g, "EQ-00001", "2024-03-01T00:10:00Z", 72);
  push(*g, "EQ-00001", "2024-03-01T00:15:00Z", 72);
  CHECK(g->snapshot()->alarms.at("AL-000001").state == AlarmState::acknowledged);
  push(*g, "EQ-00001", "2024-03-01T00:20:00Z", 72);
  const auto cleared = g->snapshot()->alarms.at("AL-000001");
  CHECK(cleared.state == AlarmState::cleared);
  CHECK(cleared.cleared_at == T("2024-03-01T00:20:00Z"));
  CHECK(code_of([&] { acknowledge(*g, "AL-000001", "fm-01"); }) == Errc::illegal_state);

  // A raised alarm can clear without an acknowledgement.
  push(*g, "EQ-00001", "2024-03-01T00:25:00Z", 60);
  for (const char* at : {"2024-03-01T00:30:00Z", "2024-03-01T00:35:00Z", "2024-03-01T00:40:00Z"}) {
    push(*g, "EQ-00001", at, 70);
  }
  CHECK(g->snapshot()->alarms.at("AL-000002").state == AlarmState::cleared);
  CHECK(g->snapshot()->alarms.at("AL-000002").acked_at == std::nullopt);
}

TEST_CASE("alarms: active_alarms filters") {
  auto g = thermometers();
  CHECK(active_alarms(*g->snapshot()).empty());

  push(*g, "EQ-00004", "2024-03-01T00:00:00Z", 90);
  push(*g, "EQ-00001", "2024-03-01T00:05:00Z", 90);
  auto all = active_alarms(*g->snapshot());
  REQUIRE(all.size() == 2);
  CHECK(all[0].raised_at < all[1].raised_at);

  auto eq1 = active_alarms(*g->snapshot(), {AlarmFilter::By::equipment, "EQ-00001"});
  REQUIRE(eq1.size() == 1);
  CHECK(eq1[0].sensor_id == "EQ-00001-temperature");
  CHECK(active_alarms(*g->snapshot(), {AlarmFilter::By::discipline, "conveying"}).size() == 1);
  CHECK(active_alarms(*g->snapshot(), {AlarmFilter::By::discipline, "plumbing"}).empty());
  CHECK(code_of([&] { active_alarms(*g->snapshot(), {AlarmFilter::By::discipline, "hvac"}); }) == Errc::bad_filter);

  // One raised, one cleared: one returned.
  for (const char* at : {"2024-03-01T00:10:00Z", "2024-03-01T00:15:00Z", "2024-03-01T00:20:00Z"}) {
    push(*g, "EQ-00004", at, 70);
  }
  CHECK(g->snapshot()->alarms.size() == 2);
  auto left = active_alarms(*g->snapshot());
  REQUIRE(left.size() == 1);
  CHECK(left[0].sensor_id == "EQ-00001-temperature");
}

TEST_CASE("alarms: the committed stream replays to the same alarm events") {
  TempDir dir;
  auto g = std::make_unique<TwinGraph>(file_options(dir / "twin.jsonl"));
  small_building(*g);
  bind_sensor(*g, "EQ-00001", spec(SensorKind::temperature, 60, 68, 76, SimProfile{72, 6, 3}), AlarmRule{"", 68, 76, 2, 2});
  bind_sensor(*g, "EQ-00002", spec(SensorKind::temperature, 120, 68, 76, SimProfile{75, 3, 2}));
  run_simulation(*g, {11, T("2024-03-01T00:00:00Z"), 6 * 3600, 0});
  const auto state = g->snapshot();
  REQUIRE_FALSE(state->alarms.empty());

  // At most one active alarm per sensor.
  std::map<std::string, int> active;
  for (const auto& [id, a] : state->alarms) active[a.sensor_id] += a.active() ? 1 : 0;
  for (const auto& [sensor, n] : active) CHECK(n <= 1);

  // Re-evaluating the stored readings gives the logged transitions.
  const auto events = read_event_log(dir / "twin.jsonl");
  std::vector<std::pair<std::string, Timestamp>> logged, recomputed;
  std::map<std::string, std::string> sensor_of_alarm;
  for (const auto& e : events) {
    if (e.kind != EventKind::alarm_raised && e.kind != EventKind::alarm_cleared) continue;
    const auto id = e.payload.at("alarm_id").get<std::string>();
    if (e.kind == EventKind::alarm_raised) sensor_of_alarm[id] = e.payload.at("sensor_id").get<std::string>();
    logged.emplace_back(std::string(to_string(e.kind)) + ":" + sensor_of_alarm.at(id), e.at);
  }
  std::map<std::string, RuleState> st;
  for (const auto& e : events) {
    if (e.kind != EventKind::reading_ingested) continue;
    const auto r = e.payload.get<SensorReading>();
    auto ev = evaluate(state->rules.at(r.sensor_id), st[r.sensor_id], r);
    st[r.sensor_id] = ev.next;
    if (ev.transition) {
      recomputed.emplace_back(
          std::string(*ev.transition == AlarmTransition::raise ? "alarm_raised" : "alarm_cleared") + ":" + r.sensor_id,
          r.at);
    }
  }
  CHECK(logged == recomputed);
  CHECK(st == state->rule_states);

  g.reset();
  TwinGraph reopened(file_options(dir / "twin.jsonl"));
  CHECK(reopened.snapshot()->alarms == state->alarms);
  CHECK(reopened.snapshot()->rule_states == state->rule_states);
}
