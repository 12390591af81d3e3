// Copyright 2026 The twinfm Authors
// SPDX-License-Identifier: Apache-2.0

#include <fstream>

#include "csv.hpp"
#include "doctest.h"
#include "inventory.hpp"
#include "omniclass.hpp"
#include "test_support.hpp"

using namespace twin;
using namespace twin::testing;

namespace {

const char* kSpaces =
    "Room-Category,Room-Name,Room-Tag,Room-AugmentID,Floor-Level\n"
    "13-55 11 00 Office Spaces,Main Study Area,Room 101,,1\n"
    "13-23 17 00 Restroom,Men's RRs,Restroom A,,1\n";

const char* kEquipmentHeaderLine =
    "OMNICLASS_SYSTEM,OMNICLASS_TYPE,AugmentID_Type,AugmentID_Instance,Space_Instance,Discipline,OM_Properties\n";

void write(const std::filesystem::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

EquipmentRow lighting_row() {
  return {{"OMNICLASS_SYSTEM", "23-04 50 Electrical"},
          {"OMNICLASS_TYPE", "23-35 47 00 Electrical Lighting"},
          {"AugmentID_Type", ""},
          {"AugmentID_Instance", ""},
          {"Space_Instance", "Room 101"},
          {"Discipline", ""},
          {"OM_Properties", R"({"wattage":{"value":40,"unit":"W"}})"}};
}

auto known(std::initializer_list<const char*> tags) {
  std::set<std::string> s(tags.begin(), tags.end());
  return [s](const std::string& t) { return s.count(t) > 0; };
}

}  // namespace

TEST_CASE("csv: quoted fields, doubled quotes, embedded newlines and BOM") {
  auto rows = parse_csv("\xEF\xBB\xBF" "a,b\n\"x,1\",\"say \"\"hi\"\"\"\n\n\"multi\nline\",z\r\n");
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == CsvRow{"a", "b"});
  CHECK(rows[1] == CsvRow{"x,1", "say \"hi\""});
  CHECK(rows[2] == CsvRow{"multi\nline", "z"});
  CHECK(csv_line({"a,b", "c\"d", "e"}) == "\"a,b\",\"c\"\"d\",e");
  CHECK(parse_csv(csv_line({"a,b", "c\"d", "e"})).front() == CsvRow{"a,b", "c\"d", "e"});
}

TEST_CASE("inventory: validate_equipment examples") {
  CHECK(validate_equipment(lighting_row(), known({"Room 101"})).empty());

  auto missing = lighting_row();
  missing["OMNICLASS_SYSTEM"] = "";
  auto v = validate_equipment(missing, known({"Room 101"}));
  REQUIRE(v.size() == 1);
  CHECK(v[0].rule == "required-field");

  auto dangling = lighting_row();
  dangling["Space_Instance"] = "Room 999";
  v = validate_equipment(dangling, known({"Room 101"}));
  REQUIRE(v.size() == 1);
  CHECK(v[0].rule == "dangling-space");

  auto bad_code = lighting_row();
  bad_code["OMNICLASS_TYPE"] = "14-35 47 00 Lighting";
  CHECK(validate_equipment(bad_code, known({"Room 101"}))[0].rule == "malformed-code");

  auto bad_props = lighting_row();
  bad_props["OM_Properties"] = "{not json";
  CHECK(validate_equipment(bad_props, known({"Room 101"}))[0].rule == "malformed-properties");

  auto mismatch = lighting_row();
  mismatch["Discipline"] = "plumbing";
  v = validate_equipment(mismatch, known({"Room 101"}));
  REQUIRE(v.size() == 1);
  CHECK(v[0].rule == "discipline-mismatch");
  CHECK_FALSE(v[0].rejects_row);
}

TEST_CASE("inventory: the seed lighting rows validate cleanly") {
  const auto rows = read_csv_file(seed_dir() / "equipment.csv");
  const auto spaces = read_csv_file(seed_dir() / "spaces.csv");
  std::set<std::string> tags;
  for (std::size_t r = 1; r < spaces.size(); ++r) tags.insert(spaces[r][2]);
  int checked = 0;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    EquipmentRow row;
    for (std::size_t c = 0; c < rows[0].size(); ++c) row[rows[0][c]] = rows[r][c];
    if (!same_omniclass_code(row["OMNICLASS_TYPE"], "23-35 47 00")) continue;
    CHECK(validate_equipment(row, [&](const std::string& t) { return tags.count(t) > 0; }).empty());
    ++checked;
  }
  CHECK(checked == 300);
}

TEST_CASE("inventory: assign_augment_ids") {
  auto make = [](std::string type, std::string id = "") {
    EquipmentItem e = item(std::move(type), "Room 101");
    e.augment_id_instance = std::move(id);
    return e;
  };
  Inventory inv;
  inv.spaces = {space("Room 230"), space("Room 101")};
  inv.equipment = {make("23-35 47 00 Lighting"), make("23-33 13 00 AHU"), make("23-35 47 00 Lighting")};

  auto once = assign_augment_ids(inv);
  const auto& eq = once.inventory.equipment;
  // Sorted by canonical type, then ingest order.
  CHECK(eq[1].augment_id_instance == "EQ-00001");
  CHECK(eq[0].augment_id_instance == "EQ-00002");
  CHECK(eq[2].augment_id_instance == "EQ-00003");
  CHECK(eq[1].augment_id_type == "TY-001");
  CHECK(eq[0].augment_id_type == "TY-002");
  CHECK(eq[2].augment_id_type == "TY-002");
  CHECK(once.inventory.spaces[1].room_augment_id == "SP-001");
  CHECK(once.inventory.spaces[0].room_augment_id == "SP-002");

  auto twice = assign_augment_ids(once.inventory);
  CHECK(twice.assigned == 0);
  CHECK(twice.inventory.equipment == once.inventory.equipment);
  CHECK(twice.inventory.spaces == once.inventory.spaces);

  Inventory preset;
  preset.equipment = {make("23-33 13 00 AHU"), make("23-33 13 00 AHU", "EQ-CUSTOM"), make("23-33 13 00 AHU")};
  auto p = assign_augment_ids(preset);
  CHECK(p.inventory.equipment[0].augment_id_instance == "EQ-00001");
  CHECK(p.inventory.equipment[1].augment_id_instance == "EQ-CUSTOM");
  CHECK(p.inventory.equipment[2].augment_id_instance == "EQ-00002");

  Inventory collide;
  collide.equipment = {make("23-33 13 00 AHU", "EQ-00001"), make("23-33 13 00 AHU")};
  CHECK(code_of([&] { assign_augment_ids(collide); }) == Errc::id_collision);
}

TEST_CASE("inventory: load_inventory from files") {
  TempDir dir;
  write(dir / "spaces.csv", kSpaces);

  SUBCASE("empty equipment file with a valid header") {
    write(dir / "equipment.csv", kEquipmentHeaderLine);
    TwinGraph g(memory_options());
    auto r = load_inventory(g, dir / "spaces.csv", dir / "equipment.csv");
    CHECK(r.equipment_loaded == 0);
    CHECK(r.violations.empty());
    CHECK(r.spaces_loaded == 2);
  }
  SUBCASE("one malformed row is reported, the rest committed") {
    write(dir / "equipment.csv", std::string(kEquipmentHeaderLine) +
                                     "23-04 50 Electrical,23-35 47 00 Electrical Lighting,,,Room 101,,\n"
                                     "23-04 50 Electrical,23-3X 47 00 Broken,,,Room 101,,\n"
                                     "23-33 00 00 HVAC,23-33 13 00 Air Handling Units,,,Restroom A,,\n");
    TwinGraph g(memory_options());
    auto r = load_inventory(g, dir / "spaces.csv", dir / "equipment.csv");
    CHECK(r.equipment_loaded == 2);
    REQUIRE(r.rejected_rows() == 1);
    CHECK(r.violations[0].row == 3);
    CHECK(r.violations[0].rule == "malformed-code");
    CHECK(r.equipment_loaded + r.rejected_rows() == r.equipment_rows);
    CHECK(g.snapshot()->equipment.size() == 2);

    // Strict mode commits nothing.
    TwinGraph strict(memory_options());
    auto s = load_inventory(strict, dir / "spaces.csv", dir / "equipment.csv", true);
    CHECK_FALSE(s.committed);
    CHECK(strict.last_seq() == 0);

    // Reloading is idempotent.
    const auto seq = g.last_seq();
    load_inventory(g, dir / "spaces.csv", dir / "equipment.csv");
    CHECK(g.last_seq() == seq);
  }
  SUBCASE("optional Dashboard_Support column") {
    write(dir / "equipment.csv",
          "OMNICLASS_SYSTEM,OMNICLASS_TYPE,AugmentID_Type,AugmentID_Instance,Space_Instance,Discipline,OM_Properties,"
          "Dashboard_Support\n"
          "23-04 50 Electrical,23-35 15 00 Panelboards,,,Room 101,,,true\n");
    TwinGraph g(memory_options());
    load_inventory(g, dir / "spaces.csv", dir / "equipment.csv");
    CHECK(g.snapshot()->find_equipment("EQ-00001")->dashboard_support);
  }
  SUBCASE("structural failures") {
    write(dir / "equipment.csv", "OMNICLASS_SYSTEM,OMNICLASS_TYPE\n");
    TwinGraph g(memory_options());
    CHECK(code_of([&] { load_inventory(g, dir / "spaces.csv", dir / "equipment.csv"); }) == Errc::header_mismatch);
    CHECK(code_of([&] { load_inventory(g, dir / "spaces.csv", dir / "missing.csv"); }) == Errc::file_unreadable);
    CHECK(g.last_seq() == 0);
  }
}
