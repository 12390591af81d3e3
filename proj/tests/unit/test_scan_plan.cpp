// Copyright 2026 The twinfm Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>
#include <random>

#include "csv.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "scan_plan.hpp"
#include "scan_fixtures.hpp"
#include "test_support.hpp"

using namespace twin;
using namespace twin::scan;
using twin::testing::code_of;
using twin::testing::plan_at;
using twin::testing::random_floor;
using twin::testing::random_plan;
using twin::testing::rect;

namespace {

double perimeter(const Ring& r) {
  double p = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const auto& a = r[i];
    const auto& b = r[(i + 1) % r.size()];
    p += std::hypot(b.x - a.x, b.y - a.y);
  }
  return p;
}

}  // namespace

TEST_CASE("scan plan: coverage examples") {
  auto full = coverage_fraction(rect(20, 20), plan_at({{10, 10}}), 1.0);
  CHECK(full.fraction == 1.0);
  CHECK(full.floor_cells == 400);
  CHECK(full.uncovered_cells == 0);

  auto none = coverage_fraction(rect(20, 20), plan_at({}), 1.0);
  CHECK(none.fraction == 0.0);
  CHECK(none.uncovered_cells == none.floor_cells);

  const auto floor = rect(100, 40);
  const auto plan = plan_at({{25, 20}, {75, 20}});
  auto two = coverage_fraction(floor, plan, 1.0);
  auto brute = oracle::brute_coverage(floor, plan, 1.0);
  CHECK(two.floor_cells == brute.floor);
  CHECK(two.covered_cells == brute.covered);
  CHECK(two.fraction == static_cast<double>(brute.covered) / static_cast<double>(brute.floor));
  // Corner cells sit about 31.3 ft from the nearer scanner.
  CHECK(two.uncovered_cells == 32);
}

TEST_CASE("scan plan: overlap examples") {
  auto near = overlap_graph(plan_at({{0, 0}, {50, 0}}));
  CHECK(near.edges == std::vector<std::pair<int, int>>{{1, 2}});
  CHECK(near.connected);
  auto far = overlap_graph(plan_at({{0, 0}, {70, 0}}));
  CHECK(far.edges.empty());
  CHECK_FALSE(far.connected);
  auto single = overlap_graph(plan_at({{0, 0}}));
  CHECK(single.edges.empty());
  CHECK(single.connected);
  // Tangent disks share no interior.
  CHECK(overlap_graph(plan_at({{0, 0}, {60, 0}})).edges.empty());
}

TEST_CASE("scan plan: validate_plan examples") {
  const auto floor = rect(100, 40);
  auto ok = validate_plan(floor, plan_at({{25, 20}, {75, 20}}), 0.99, 1.0);
  CHECK(ok.coverage_ok);
  CHECK(ok.overlap_connected);
  CHECK(ok.sequence_valid);
  CHECK(ok.passed());
  CHECK(ok.warnings.empty());

  auto gap = plan_at({{25, 20}, {75, 20}});
  gap.positions[1].index = 3;
  auto r = validate_plan(floor, gap, 0.99, 1.0);
  CHECK_FALSE(r.sequence_valid);
  CHECK_FALSE(r.passed());

  auto with_target = plan_at({{25, 20}, {75, 20}});
  with_target.targets.push_back({scan::TargetKind::sphere, {500, 500}, 5.0});
  with_target.targets.push_back({scan::TargetKind::checkerboard, {50, 20}, 5.0});
  r = validate_plan(floor, with_target, 0.99, 1.0);
  REQUIRE(r.warnings.size() == 1);
  CHECK(r.warnings[0].find("target out of range") == 0);

  CHECK(code_of([&] { validate_plan(floor, with_target, 0.0, 1.0); }) == Errc::invalid_argument);
  CHECK(code_of([&] { validate_plan(floor, with_target, 1.5, 1.0); }) == Errc::invalid_argument);
}

TEST_CASE("scan plan: sequence rules") {
  CHECK(sequence_valid(plan_at({{0, 0}, {1, 1}, {2, 2}})));
  CHECK_FALSE(sequence_valid(plan_at({})));
  auto dup = plan_at({{0, 0}, {1, 1}});
  dup.positions[1].index = 1;
  CHECK_FALSE(sequence_valid(dup));
  auto rev = plan_at({{0, 0}, {1, 1}});
  std::swap(rev.positions[0].index, rev.positions[1].index);
  CHECK_FALSE(sequence_valid(rev));
}

TEST_CASE("scan plan: floor and plan errors") {
  CHECK(code_of([] { validate_floor(FloorOutline{{{0, 0}, {1, 1}}, {}}); }) == Errc::degenerate_floor);
  CHECK(code_of([] { validate_floor(FloorOutline{{{0, 0}, {1, 1}, {2, 2}}, {}}); }) == Errc::degenerate_floor);
  // Bow tie.
  CHECK(code_of([] { validate_floor(FloorOutline{{{0, 0}, {10, 0}, {2, 10}, {8, 10}}, {}}); }) ==
        Errc::invalid_floor);
  auto outside_hole = rect(10, 10);
  outside_hole.holes.push_back({{20, 20}, {22, 20}, {22, 22}});
  CHECK(code_of([&] { validate_floor(outside_hole); }) == Errc::invalid_floor);
  auto touching = rect(10, 10);
  touching.holes.push_back({{0, 2}, {3, 2}, {3, 4}});
  CHECK(code_of([&] { validate_floor(touching); }) == Errc::invalid_floor);
  auto overlapping = rect(10, 10);
  overlapping.holes.push_back({{2, 2}, {5, 2}, {5, 5}, {2, 5}});
  overlapping.holes.push_back({{4, 4}, {7, 4}, {7, 7}, {4, 7}});
  CHECK(code_of([&] { validate_floor(overlapping); }) == Errc::invalid_floor);

  CHECK(code_of([] { coverage_fraction(rect(10, 10), plan_at({{5, 5}}), 0.0); }) == Errc::invalid_argument);
  CHECK(code_of([] { coverage_fraction(rect(10, 10), plan_at({{5, 5}}, 0.0), 1.0); }) == Errc::invalid_plan);
}

TEST_CASE("scan plan: holes are excluded from the floor") {
  auto f = rect(10, 10);
  f.holes.push_back({{2, 2}, {4, 2}, {4, 4}, {2, 4}});
  auto c = coverage_fraction(f, plan_at({{5, 5}}), 1.0);
  CHECK(c.floor_cells == 96);
  CHECK(c.fraction == 1.0);
}

TEST_CASE("scan plan: GeoJSON and plan JSON parsing") {
  auto floor = floor_from_geojson(json::parse(R"({"type":"Feature","geometry":{"type":"Polygon",
      "coordinates":[[[0,0],[100,0],[100,40],[0,40],[0,0]],[[10,10],[12,10],[12,12],[10,12],[10,10]]]}})"));
  CHECK(floor.exterior.size() == 4);
  CHECK(floor.holes.size() == 1);
  auto plan = plan_from_json(json::parse(R"({"range_radius":30,"positions":[
      {"index":1,"point":[25,20],"label":"S1"},{"index":2,"point":{"x":75,"y":20}}],
      "targets":[{"kind":"sphere","point":[50,20],"height":5}]})"));
  CHECK(plan.positions.size() == 2);
  CHECK(plan.positions[1].point.x == 75);
  CHECK(plan.targets[0].kind == scan::TargetKind::sphere);
  CHECK(plan_from_json(plan_to_json(plan)).positions[0].label == "S1");
  CHECK(code_of([] { floor_from_geojson(json::parse(R"({"type":"Point","coordinates":[0,0]})")); }) ==
        Errc::invalid_floor);
}

TEST_CASE("scan plan: coverage equals the brute-force grid scan on 60 random fixtures") {
  std::mt19937_64 rng(42);
  const double steps[] = {0.5, 0.75, 1.0, 1.5, 2.0};
  for (int n = 0; n < 60; ++n) {
    const auto floor = random_floor(rng, n % 2 == 1);
    REQUIRE_NOTHROW(validate_floor(floor));
    const auto plan = random_plan(rng, floor);
    const double step = steps[rng() % 5];
    const auto fast = coverage_fraction(floor, plan, step);
    const auto slow = oracle::brute_coverage(floor, plan, step);
    INFO("fixture " << n);
    REQUIRE(fast.floor_cells == slow.floor);
    REQUIRE(fast.covered_cells == slow.covered);
    REQUIRE(fast.fraction == static_cast<double>(slow.covered) / static_cast<double>(slow.floor));

    const auto edges = overlap_graph(plan).edges;
    REQUIRE(edges == oracle::pairwise_overlaps(plan));
  }
}

TEST_CASE("scan plan: adding a position never lowers coverage") {
  std::mt19937_64 rng(99);
  for (int n = 0; n < 40; ++n) {
    const auto floor = random_floor(rng, n % 3 == 0);
    auto plan = random_plan(rng, floor);
    double prev = coverage_fraction(floor, plan, 1.0).fraction;
    for (int k = 0; k < 4; ++k) {
      auto extra = random_plan(rng, floor).positions.front();
      extra.index = static_cast<int>(plan.positions.size()) + 1;
      plan.positions.push_back(extra);
      const double next = coverage_fraction(floor, plan, 1.0).fraction;
      REQUIRE(next >= prev);
      prev = next;
    }
  }
}

TEST_CASE("scan plan: overlap graph is symmetric") {
  std::mt19937_64 rng(5);
  for (int n = 0; n < 50; ++n) {
    auto plan = random_plan(rng, random_floor(rng, false));
    const auto forward = overlap_graph(plan);
    std::reverse(plan.positions.begin(), plan.positions.end());
    const auto backward = overlap_graph(plan);
    REQUIRE(forward.edges == backward.edges);
    REQUIRE(forward.connected == backward.connected);
    for (auto [i, j] : forward.edges) REQUIRE(i < j);
  }
}

TEST_CASE("scan plan: halving the grid step stays within the recorded refinement bound") {
  const json fx = json::parse(read_text_file(testing::fixtures_dir() / "scanplan" / "refinement.json"));
  const double factor = fx.at("tolerance_factor").get<double>();
  for (const auto& c : fx.at("cases")) {
    const auto floor = floor_from_geojson(c.at("floor"));
    const auto plan = plan_from_json(c.at("plan"));
    double area = std::abs(signed_area(floor.exterior));
    double per = perimeter(floor.exterior);
    for (const auto& h : floor.holes) {
      area -= std::abs(signed_area(h));
      per += perimeter(h);
    }
    for (const auto& s : c.at("steps")) {
      const double h = s.get<double>();
      const double coarse = coverage_fraction(floor, plan, h).fraction;
      const double fine = coverage_fraction(floor, plan, h / 2).fraction;
      const double bound = factor * per * h / area;
      INFO(c.at("name").get<std::string>() << " step " << h << " diff " << std::abs(coarse - fine) << " bound "
                                            << bound);
      CHECK(std::abs(coarse - fine) < bound);
    }
  }
}
