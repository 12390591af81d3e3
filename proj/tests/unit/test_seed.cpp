// Copyright 2026 The twinfm Authors
// SPDX-License-Identifier: Apache-2.0

#include <fstream>

#include "csv.hpp"
#include "doctest.h"
#include "omniclass.hpp"
#include "test_support.hpp"

using namespace twin;
using namespace twin::testing;

namespace {

// The published itemized inventory, category by category.
const std::map<std::string, int> kItemized = {
    {"air_handling_unit", 3},   {"energy_recovery_unit", 1}, {"variable_air_volume_box", 1},
    {"hot_water_pump", 2},      {"temperature_sensor", 30},  {"humidity_sensor", 20},
    {"co_sensor", 20},          {"lighting_fixture", 300},   {"transformer", 2},
    {"faucet", 16},             {"sink", 16},                {"toilet", 16},
    {"urinal", 8},              {"service_sink", 4},         {"water_heater", 8},
    {"drinking_fountain", 2},   {"elevator", 2},             {"generator", 1},
    {"occupancy_sensor", 60}};

std::size_t modeled_items(const TwinState& s) {
  return static_cast<std::size_t>(std::count_if(s.equipment.begin(), s.equipment.end(),
                                                [](const auto& kv) { return !kv.second.dashboard_support; }));
}

}  // namespace

TEST_CASE("seed: full load matches the itemized inventory") {
  TwinGraph g(memory_options());
  const auto report = load_seed(g, seed_dir(), telemetry());
  const auto s = g.snapshot();

  std::map<std::string, int> counts;
  for (const auto& [name, cat] : report.manifest.equipment_counts) counts[name] = cat.count;
  CHECK(counts == kItemized);
  for (const auto& [name, cat] : report.manifest.equipment_counts) {
    CAPTURE(name);
    CHECK(static_cast<int>(std::count_if(s->equipment.begin(), s->equipment.end(), [&](const auto& kv) {
            return !kv.second.dashboard_support && same_omniclass_code(kv.second.omniclass_type, cat.omniclass_type);
          })) == cat.count);
  }
  CHECK(modeled_items(*s) == 512);
  CHECK(s->equipment.size() == 513);  // plus the dashboard-support panel board
  CHECK(s->spaces.size() == static_cast<std::size_t>(report.manifest.space_count));
  CHECK(s->policies.size() == 6);
  CHECK(s->integrity_violations().empty());
}

TEST_CASE("seed: the itemized sum differs from the published headline total") {
  int sum = 0;
  for (const auto& [name, n] : kItemized) sum += n;
  CHECK(sum == 512);
  const auto manifest = manifest_from_json(json::parse(read_text_file(seed_dir() / "manifest.json")));
  CHECK(manifest.itemized_total() == 512);
  CHECK(manifest.headline_total == 509);
  CHECK(manifest.itemized_total() - manifest.headline_total == 3);
}

TEST_CASE("seed: sensor-kind equipment is bound, occupancy alone is live-capable") {
  auto g = seeded_graph();
  const auto s = g->snapshot();
  std::map<SensorKind, int> counted;
  for (const auto& [id, spec] : s->sensors) {
    CHECK(spec.live_capable == (spec.kind == SensorKind::occupancy));
    if (!spec.dashboard_support) ++counted[spec.kind];
    CHECK(s->rules.count(id) == 1);
  }
  CHECK(counted == std::map<SensorKind, int>{{SensorKind::temperature, 30},
                                             {SensorKind::humidity, 20},
                                             {SensorKind::co, 20},
                                             {SensorKind::occupancy, 60}});
  CHECK(s->sensors.size() == 188);
  // Every sensor-kind item carries its matching sensor.
  for (const auto& [type, kind] : std::vector<std::pair<const char*, SensorKind>>{
           {"23-33 41 13", SensorKind::temperature},
           {"23-33 41 11", SensorKind::humidity},
           {"23-33 41 15", SensorKind::co},
           {"23-37 41 00", SensorKind::occupancy}}) {
    for (const auto* item : s->equipment_of_type(type)) CHECK(s->sensor_for(item->augment_id_instance, kind));
  }
  // Named rooms from the published examples are present.
  CHECK(s->find_space("Room 101") != nullptr);
  CHECK(s->find_space("Restroom A")->room_name == "Men's RRs");
  CHECK(std::any_of(s->spaces.begin(), s->spaces.end(),
                    [](const auto& kv) { return kv.second.room_name == "Main Study Area"; }));
}

TEST_CASE("seed: tampered fixtures are rejected before any commit") {
  TempDir dir;
  for (const auto& f : std::filesystem::directory_iterator(seed_dir())) {
    std::filesystem::copy_file(f.path(), dir.path() / f.path().filename());
  }
  const auto rows = parse_csv(read_text_file(seed_dir() / "equipment.csv"));
  std::ofstream out(dir / "equipment.csv", std::ios::binary | std::ios::trunc);
  bool dropped = false;
  for (const auto& row : rows) {
    if (!dropped && row.size() > 1 && row[1].rfind("23-35 47 00", 0) == 0) {
      dropped = true;
      continue;
    }
    out << csv_line(row) << "\n";
  }
  out.close();
  REQUIRE(dropped);

  TwinGraph g(memory_options());
  CHECK(code_of([&] { load_seed(g, dir.path(), telemetry()); }) == Errc::manifest_mismatch);
  CHECK(g.last_seq() == 0);
}

TEST_CASE("seed: reload is idempotent and loads are deterministic") {
  TwinGraph a(memory_options());
  const auto first = load_seed(a, seed_dir(), telemetry());
  CHECK(first.events_appended == a.last_seq());
  const auto again = load_seed(a, seed_dir(), telemetry());
  CHECK(again.events_appended == 0);
  CHECK(a.last_seq() == first.events_appended);

  TwinGraph b(memory_options());
  load_seed(b, seed_dir(), telemetry());
  CHECK(a.snapshot()->serialize() == b.snapshot()->serialize());
}

TEST_CASE("seed: electrical discipline and the published example ids") {
  auto g = seeded_graph();
  const auto s = g->snapshot();
  int electrical = 0, support = 0;
  for (const auto& [id, e] : s->equipment) {
    if (e.discipline != Discipline::electrical) continue;
    ++electrical;
    support += e.dashboard_support ? 1 : 0;
  }
  CHECK(electrical == 304);
  CHECK(support == 1);
  // Ids follow the canonical category order, so the example topic resolves.
  CHECK(s->sensor_for("EQ-00042", SensorKind::temperature) == "EQ-00042-temperature");
}
