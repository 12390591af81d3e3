// Copyright 2026 The twinfm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "model.hpp"

namespace twin::scan {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

using Ring = std::vector<Point>;  // open ring; no repeated closing vertex

// Planar floor outline in feet.
struct FloorOutline {
  Ring exterior;
  std::vector<Ring> holes;  // columns, shafts
};

struct ScanPosition {
  int index = 0;
  Point point;
  std::string label;
};

enum class TargetKind { checkerboard, sphere };

struct ScanTarget {
  TargetKind kind = TargetKind::checkerboard;
  Point point;
  double height = 0.0;
};

inline constexpr double kDefaultRangeFeet = 30.0;

struct ScanPlan {
  std::vector<ScanPosition> positions;  // in execution order
  std::vector<ScanTarget> targets;
  double range_radius = kDefaultRangeFeet;
};

// Evaluation grid: axis-aligned cells of side `step` anchored at the
// exterior's bounding-box minimum, nx = ceil(width / step) columns and
// ny = ceil(height / step) rows. Cell (i, j) has center
// (min_x + (i + 0.5) * step, min_y + (j + 0.5) * step). A cell belongs to the
// floor when its center is inside the exterior and inside no hole (even-odd
// ray test); it is covered when the center is within range_radius
// (closed disk) of at least one position.
struct Coverage {
  double fraction = 0.0;
  std::int64_t floor_cells = 0;
  std::int64_t covered_cells = 0;
  std::int64_t uncovered_cells = 0;
};

struct OverlapGraph {
  std::vector<std::pair<int, int>> edges;  // position indices, first < second
  bool connected = false;
};

struct PlanReport {
  double coverage_fraction = 0.0;
  std::int64_t uncovered_cell_count = 0;
  std::int64_t floor_cell_count = 0;
  double min_coverage = 0.0;
  bool coverage_ok = false;
  std::vector<std::pair<int, int>> overlap_edges;
  bool overlap_connected = false;
  bool sequence_valid = false;
  std::vector<std::string> warnings;

  bool passed() const { return coverage_ok && overlap_connected && sequence_valid; }
};

double signed_area(const Ring& ring);

// Throws DegenerateFloor (fewer than 3 vertices or zero area) or InvalidFloor
// (self-intersection, hole not strictly inside, overlapping holes).
void validate_floor(const FloorOutline& floor);

// Throws InvalidPlan for a non-positive range radius.
void validate_plan_shape(const ScanPlan& plan);

// Throws DegenerateFloor, InvalidFloor, InvalidArgument (grid_step <= 0 or a
// grid too coarse to place any cell center on the floor). An empty plan
// yields fraction 0 with every floor cell uncovered.
Coverage coverage_fraction(const FloorOutline& floor, const ScanPlan& plan, double grid_step);

// Edge (i, j) iff the open range disks intersect: distance < 2 * radius.
OverlapGraph overlap_graph(const ScanPlan& plan);

// Indices are exactly 1..N in order.
bool sequence_valid(const ScanPlan& plan);

PlanReport validate_plan(const FloorOutline& floor, const ScanPlan& plan, double min_coverage, double grid_step);

// GeoJSON Polygon, or a Feature / FeatureCollection whose first geometry is one.
FloorOutline floor_from_geojson(const json& geojson);
ScanPlan plan_from_json(const json& j);
json plan_to_json(const ScanPlan& plan);
json report_to_json(const PlanReport& report);

}  // namespace twin::scan
