// Copyright 2026 The twinfm Authors
// SPDX-License-Identifier: Apache-2.0

#include <random>

#include "doctest.h"
#include "model.hpp"
#include "omniclass.hpp"
#include "test_support.hpp"

using namespace twin;
using twin::testing::code_of;

TEST_CASE("omniclass: published examples parse into table, groups and title") {
  auto office = parse_omniclass("13-55 11 00 Office Spaces");
  CHECK(office.table == 13);
  CHECK(office.levels == std::vector<std::string>{"55", "11", "00"});
  CHECK(office.title == "Office Spaces");

  auto electrical = parse_omniclass("23-04 50 Electrical");
  CHECK(electrical.table == 23);
  CHECK(electrical.levels == std::vector<std::string>{"04", "50"});
  CHECK(electrical.title == "Electrical");

  auto brk = parse_omniclass("13-57 17 13 Break Room");
  CHECK(brk.levels == std::vector<std::string>{"57", "17", "13"});
  CHECK(brk.title == "Break Room");
}

TEST_CASE("omniclass: the five example codes re-render verbatim") {
  for (const char* text : {"13-55 11 00 Office Spaces", "13-23 17 00 Restroom", "13-57 17 13 Break Room",
                           "23-04 50 Electrical", "23-35 47 00 Electrical Lighting"}) {
    CHECK(parse_omniclass(text).render() == text);
  }
}

TEST_CASE("omniclass: malformed input") {
  CHECK(code_of([] { parse_omniclass("14-55 11 00 X"); }) == Errc::malformed_code);
  CHECK(code_of([] { parse_omniclass(""); }) == Errc::malformed_code);
  CHECK(code_of([] { parse_omniclass("13-5A 11 Office"); }) == Errc::malformed_code);
  CHECK(code_of([] { parse_omniclass("13-555 11 Office"); }) == Errc::malformed_code);
  CHECK(code_of([] { parse_omniclass("13 55 11 Office"); }) == Errc::malformed_code);
  CHECK(code_of([] { parse_omniclass("13-"); }) == Errc::malformed_code);
  CHECK(code_of([] { parse_omniclass("13-11 22 33 44 55 Too Deep"); }) == Errc::malformed_code);
}

TEST_CASE("omniclass: table-specific parsers") {
  CHECK(code_of([] { parse_space_category("23-33 13 00 Air Handling Units"); }) == Errc::malformed_category);
  CHECK(code_of([] { parse_space_category("x"); }) == Errc::malformed_category);
  CHECK(code_of([] { parse_equipment_code("13-55 11 00 Office Spaces"); }) == Errc::malformed_code);
  CHECK(parse_equipment_code("23-35 47 00 Electrical Lighting").code() == "23-35 47 00");
}

TEST_CASE("omniclass: whitespace is normalized and trailing 00 groups are kept") {
  auto c = parse_omniclass("  13-55   11 00    Office   Spaces ");
  CHECK(c.render() == "13-55 11 00 Office Spaces");
  CHECK(normalize_omniclass_text("  13-55   11 00    Office   Spaces ") == "13-55 11 00 Office Spaces");
  CHECK(parse_omniclass("23-33 13 00").levels.back() == "00");
  CHECK(parse_omniclass("23-33 13 00").render() == "23-33 13 00");
}

TEST_CASE("omniclass: codes compare by table and groups, ignoring titles") {
  CHECK(same_omniclass_code("23-33 13 00 Air Handling Units", "23-33 13 00"));
  CHECK_FALSE(same_omniclass_code("23-33 13 00", "23-33 13"));
  CHECK_FALSE(same_omniclass_code("garbage", "garbage"));
}

TEST_CASE("omniclass: discipline follows the system code") {
  CHECK(discipline_of_system("23-04 50 Electrical") == Discipline::electrical);
  CHECK(discipline_of_system("23-35 00 00 Electrical") == Discipline::electrical);
  CHECK(discipline_of_system("23-33 00 00 HVAC") == Discipline::mechanical);
  CHECK(discipline_of_system("23-41 00 00 Plumbing") == Discipline::plumbing);
  CHECK(discipline_of_system("23-23 00 00 Conveying") == Discipline::conveying);
  CHECK(discipline_of_system("23-37 00 00 Communication") == Discipline::communication);
  CHECK_FALSE(discipline_of_system("23-04 10 Other").has_value());
  CHECK_FALSE(discipline_of_system("nonsense").has_value());
}

TEST_CASE("omniclass: 1000 generated codes round-trip through parse and render") {
  std::mt19937_64 rng(20260101);
  const std::vector<std::string> words = {"Office", "Spaces", "Air", "Handling", "Units", "Lighting", "Room", "A",
                                          "Men's", "RRs", "Pump-2", "(East)"};
  for (int n = 0; n < 1000; ++n) {
    const int table = rng() % 2 ? 13 : 23;
    const int depth = 1 + static_cast<int>(rng() % 4);
    std::string canonical = std::to_string(table) + "-";
    std::vector<std::string> groups;
    for (int g = 0; g < depth; ++g) {
      char buf[3];
      std::snprintf(buf, sizeof buf, "%02d", static_cast<int>(rng() % 100));
      groups.emplace_back(buf);
      canonical += (g ? " " : "") + groups.back();
    }
    std::string title;
    const int title_words = static_cast<int>(rng() % 4);
    for (int w = 0; w < title_words; ++w) title += (w ? " " : "") + words[rng() % words.size()];
    if (!title.empty()) canonical += " " + title;

    // Noise: extra inner and outer whitespace.
    std::string noisy;
    for (char ch : canonical) {
      noisy.push_back(ch);
      if (ch == ' ' && rng() % 3 == 0) noisy += "  ";
    }
    noisy = std::string(rng() % 3, ' ') + noisy + std::string(rng() % 3, ' ');

    const auto parsed = parse_omniclass(noisy);
    REQUIRE(parsed.table == table);
    REQUIRE(parsed.levels == groups);
    REQUIRE(parsed.title == title);
    REQUIRE(parsed.render() == canonical);
    REQUIRE(parsed.render() == normalize_omniclass_text(noisy));
    REQUIRE(parse_omniclass(parsed.render()) == parsed);
  }
}
