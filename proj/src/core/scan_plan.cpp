// Copyright 2026 The twinfm Authors
// SPDX-License-Identifier: Apache-2.0

#include "scan_plan.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace twin::scan {

namespace {

struct Box {
  double min_x, min_y, max_x, max_y;
};

Box bounds(const Ring& ring) {
  Box b{ring[0].x, ring[0].y, ring[0].x, ring[0].y};
  for (const auto& p : ring) {
    b.min_x = std::min(b.min_x, p.x);
    b.min_y = std::min(b.min_y, p.y);
    b.max_x = std::max(b.max_x, p.x);
    b.max_y = std::max(b.max_y, p.y);
  }
  return b;
}

double cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool on_segment(const Point& p, const Point& a, const Point& b) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

// Closed-segment intersection, including touching and collinear overlap.
bool segments_touch(const Point& a, const Point& b, const Point& c, const Point& d) {
  const double d1 = cross(c, d, a);
  const double d2 = cross(c, d, b);
  const double d3 = cross(a, b, c);
  const double d4 = cross(a, b, d);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) return true;
  if (d1 == 0 && on_segment(a, c, d)) return true;
  if (d2 == 0 && on_segment(b, c, d)) return true;
  if (d3 == 0 && on_segment(c, a, b)) return true;
  if (d4 == 0 && on_segment(d, a, b)) return true;
  return false;
}

bool ring_self_intersects(const Ring& ring) {
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = ring[i];
    const Point& b = ring[(i + 1) % n];
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      const Point& c = ring[j];
      const Point& d = ring[(j + 1) % n];
      if (adjacent) {
        // Adjacent edges share one vertex; they must not fold back onto each other.
        const Point& shared = (j == i + 1) ? b : a;
        const Point& far1 = (j == i + 1) ? a : b;
        const Point& far2 = (j == i + 1) ? d : c;
        if (cross(shared, far1, far2) == 0 &&
            ((far1.x - shared.x) * (far2.x - shared.x) + (far1.y - shared.y) * (far2.y - shared.y)) > 0) {
          return true;
        }
        continue;
      }
      if (segments_touch(a, b, c, d)) return true;
    }
  }
  return false;
}

bool rings_touch(const Ring& r1, const Ring& r2) {
  for (std::size_t i = 0; i < r1.size(); ++i) {
    for (std::size_t j = 0; j < r2.size(); ++j) {
      if (segments_touch(r1[i], r1[(i + 1) % r1.size()], r2[j], r2[(j + 1) % r2.size()])) return true;
    }
  }
  return false;
}

// Even-odd ray test; a crossing counts when the point lies strictly left of
// the edge's intersection with the horizontal line through the point.
bool inside_ring(const Ring& ring, double x, double y) {
  bool inside = false;
  const std::size_t n = ring.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point& pi = ring[i];
    const Point& pj = ring[j];
    if ((pi.y > y) != (pj.y > y) && x < (pj.x - pi.x) * (y - pi.y) / (pj.y - pi.y) + pi.x) inside = !inside;
  }
  return inside;
}

// Same predicate as inside_ring, evaluated for a whole row: the sorted
// crossing abscissae of the ring with the line y = cy.
std::vector<double> row_crossings(const Ring& ring, double y) {
  std::vector<double> xs;
  const std::size_t n = ring.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point& pi = ring[i];
    const Point& pj = ring[j];
    if ((pi.y > y) != (pj.y > y)) xs.push_back((pj.x - pi.x) * (y - pi.y) / (pj.y - pi.y) + pi.x);
  }
  std::sort(xs.begin(), xs.end());
  return xs;
}

bool odd_crossings_right_of(const std::vector<double>& xs, double x) {
  const auto right = xs.end() - std::upper_bound(xs.begin(), xs.end(), x);
  return (right % 2) == 1;
}

Point point_from_json(const json& j) {
  if (j.is_array() && j.size() >= 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  if (j.is_object() && j.contains("x") && j.contains("y") && j["x"].is_number() && j["y"].is_number()) {
    return {j["x"].get<double>(), j["y"].get<double>()};
  }
  fail(Errc::invalid_plan, "point must be [x, y] or {\"x\", \"y\"}: " + j.dump());
}

Ring ring_from_geojson(const json& coords) {
  if (!coords.is_array()) fail(Errc::invalid_floor, "polygon ring must be an array of positions");
  Ring ring;
  for (const auto& c : coords) {
    if (!c.is_array() || c.size() < 2 || !c[0].is_number() || !c[1].is_number()) {
      fail(Errc::invalid_floor, "ring position must be [x, y]");
    }
    ring.push_back({c[0].get<double>(), c[1].get<double>()});
  }
  if (ring.size() >= 2 && ring.front().x == ring.back().x && ring.front().y == ring.back().y) ring.pop_back();
  return ring;
}

}  // namespace

double signed_area(const Ring& ring) {
  double sum = 0.0;
  const std::size_t n = ring.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) sum += ring[j].x * ring[i].y - ring[i].x * ring[j].y;
  return sum / 2.0;
}

void validate_floor(const FloorOutline& floor) {
  if (floor.exterior.size() < 3 || signed_area(floor.exterior) == 0.0) {
    fail(Errc::degenerate_floor, "floor exterior has zero area");
  }
  if (ring_self_intersects(floor.exterior)) fail(Errc::invalid_floor, "floor exterior self-intersects");
  double hole_area = 0.0;
  for (std::size_t h = 0; h < floor.holes.size(); ++h) {
    const Ring& hole = floor.holes[h];
    if (hole.size() < 3 || signed_area(hole) == 0.0) fail(Errc::invalid_floor, "hole has zero area");
    if (ring_self_intersects(hole)) fail(Errc::invalid_floor, "hole self-intersects");
    for (const auto& p : hole) {
      if (!inside_ring(floor.exterior, p.x, p.y)) fail(Errc::invalid_floor, "hole is not strictly inside the floor");
    }
    if (rings_touch(hole, floor.exterior)) fail(Errc::invalid_floor, "hole touches the floor boundary");
    for (std::size_t k = 0; k < h; ++k) {
      const Ring& other = floor.holes[k];
      if (rings_touch(hole, other) || inside_ring(other, hole[0].x, hole[0].y) ||
          inside_ring(hole, other[0].x, other[0].y)) {
        fail(Errc::invalid_floor, "holes overlap");
      }
    }
    hole_area += std::abs(signed_area(hole));
  }
  if (std::abs(signed_area(floor.exterior)) - hole_area <= 0.0) fail(Errc::degenerate_floor, "floor has zero area");
}

void validate_plan_shape(const ScanPlan& plan) {
  if (!(plan.range_radius > 0.0) || !std::isfinite(plan.range_radius)) {
    fail(Errc::invalid_plan, "range_radius must be positive");
  }
}

Coverage coverage_fraction(const FloorOutline& floor, const ScanPlan& plan, double grid_step) {
  if (!(grid_step > 0.0) || !std::isfinite(grid_step)) fail(Errc::invalid_argument, "grid_step must be positive");
  validate_floor(floor);
  validate_plan_shape(plan);

  const Box box = bounds(floor.exterior);
  const auto nx = static_cast<std::int64_t>(std::ceil((box.max_x - box.min_x) / grid_step));
  const auto ny = static_cast<std::int64_t>(std::ceil((box.max_y - box.min_y) / grid_step));
  const double r2 = plan.range_radius * plan.range_radius;

  Coverage out;
  std::vector<const ScanPosition*> near_row;
  for (std::int64_t j = 0; j < ny; ++j) {
    const double cy = box.min_y + (static_cast<double>(j) + 0.5) * grid_step;
    const auto exterior_xs = row_crossings(floor.exterior, cy);
    if (exterior_xs.empty()) continue;
    std::vector<std::vector<double>> hole_xs;
    for (const auto& hole : floor.holes) {
      auto xs = row_crossings(hole, cy);
      if (!xs.empty()) hole_xs.push_back(std::move(xs));
    }
    near_row.clear();
    for (const auto& p : plan.positions) {
      const double dy = cy - p.point.y;
      if (dy * dy <= r2) near_row.push_back(&p);
    }
    for (std::int64_t i = 0; i < nx; ++i) {
      const double cx = box.min_x + (static_cast<double>(i) + 0.5) * grid_step;
      if (!odd_crossings_right_of(exterior_xs, cx)) continue;
      bool in_hole = false;
      for (const auto& xs : hole_xs) {
        if (odd_crossings_right_of(xs, cx)) {
          in_hole = true;
          break;
        }
      }
      if (in_hole) continue;
      ++out.floor_cells;
      for (const ScanPosition* p : near_row) {
        const double dx = cx - p->point.x;
        const double dy = cy - p->point.y;
        if (dx * dx + dy * dy <= r2) {
          ++out.covered_cells;
          break;
        }
      }
    }
  }
  if (out.floor_cells == 0) fail(Errc::invalid_argument, "grid_step too coarse: no cell center falls on the floor");
  out.uncovered_cells = out.floor_cells - out.covered_cells;
  out.fraction = static_cast<double>(out.covered_cells) / static_cast<double>(out.floor_cells);
  return out;
}

OverlapGraph overlap_graph(const ScanPlan& plan) {
  validate_plan_shape(plan);
  OverlapGraph out;
  const std::size_t n = plan.positions.size();
  if (n == 0) return out;
  const double reach = 2.0 * plan.range_radius;
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const double dx = plan.positions[a].point.x - plan.positions[b].point.x;
      const double dy = plan.positions[a].point.y - plan.positions[b].point.y;
      if (dx * dx + dy * dy < reach * reach) {
        const int ia = plan.positions[a].index;
        const int ib = plan.positions[b].index;
        out.edges.emplace_back(std::min(ia, ib), std::max(ia, ib));
        parent[find(a)] = find(b);
      }
    }
  }
  std::sort(out.edges.begin(), out.edges.end());
  const std::size_t root = find(0);
  out.connected = true;
  for (std::size_t v = 1; v < n; ++v) out.connected = out.connected && find(v) == root;
  return out;
}

bool sequence_valid(const ScanPlan& plan) {
  if (plan.positions.empty()) return false;
  for (std::size_t i = 0; i < plan.positions.size(); ++i) {
    if (plan.positions[i].index != static_cast<int>(i) + 1) return false;
  }
  return true;
}

PlanReport validate_plan(const FloorOutline& floor, const ScanPlan& plan, double min_coverage, double grid_step) {
  if (!(min_coverage > 0.0 && min_coverage <= 1.0)) fail(Errc::invalid_argument, "min_coverage must be in (0, 1]");
  PlanReport report;
  report.min_coverage = min_coverage;
  const Coverage cov = coverage_fraction(floor, plan, grid_step);
  report.coverage_fraction = cov.fraction;
  report.uncovered_cell_count = cov.uncovered_cells;
  report.floor_cell_count = cov.floor_cells;
  report.coverage_ok = cov.fraction >= min_coverage;

  const OverlapGraph graph = overlap_graph(plan);
  report.overlap_edges = graph.edges;
  report.overlap_connected = graph.connected;
  report.sequence_valid = sequence_valid(plan);

  if (plan.positions.empty()) report.warnings.push_back("plan has no scan positions");
  if (!report.coverage_ok) {
    report.warnings.push_back("coverage " + std::to_string(cov.fraction) + " below required " +
                              std::to_string(min_coverage));
  }
  if (!plan.positions.empty() && !graph.connected) {
    report.warnings.push_back("scan positions do not form one overlapping chain");
  }
  if (!plan.positions.empty() && !report.sequence_valid) {
    report.warnings.push_back("scan positions must be numbered 1..N in execution order");
  }
  const double r2 = plan.range_radius * plan.range_radius;
  for (std::size_t t = 0; t < plan.targets.size(); ++t) {
    const auto& target = plan.targets[t];
    const bool reachable = std::any_of(plan.positions.begin(), plan.positions.end(), [&](const ScanPosition& p) {
      const double dx = target.point.x - p.point.x;
      const double dy = target.point.y - p.point.y;
      return dx * dx + dy * dy <= r2;
    });
    if (!reachable) {
      report.warnings.push_back("target out of range: target " + std::to_string(t + 1) + " at (" +
                                std::to_string(target.point.x) + ", " + std::to_string(target.point.y) +
                                ") is outside every scan range");
    }
  }
  return report;
}

FloorOutline floor_from_geojson(const json& g) {
  if (!g.is_object() || !g.contains("type")) fail(Errc::invalid_floor, "floor must be a GeoJSON object");
  const std::string type = g["type"].is_string() ? g["type"].get<std::string>() : "";
  if (type == "FeatureCollection") {
    if (!g.contains("features") || !g["features"].is_array() || g["features"].empty()) {
      fail(Errc::invalid_floor, "FeatureCollection has no features");
    }
    return floor_from_geojson(g["features"][0]);
  }
  if (type == "Feature") {
    if (!g.contains("geometry")) fail(Errc::invalid_floor, "Feature has no geometry");
    return floor_from_geojson(g["geometry"]);
  }
  if (type != "Polygon") fail(Errc::invalid_floor, "floor geometry must be a Polygon, got '" + type + "'");
  const json& coords = g.contains("coordinates") ? g["coordinates"] : json();
  if (!coords.is_array() || coords.empty()) fail(Errc::invalid_floor, "Polygon has no rings");
  FloorOutline floor;
  floor.exterior = ring_from_geojson(coords[0]);
  for (std::size_t i = 1; i < coords.size(); ++i) floor.holes.push_back(ring_from_geojson(coords[i]));
  return floor;
}

ScanPlan plan_from_json(const json& j) {
  if (!j.is_object()) fail(Errc::invalid_plan, "plan must be a JSON object");
  ScanPlan plan;
  if (j.contains("range_radius")) {
    if (!j["range_radius"].is_number()) fail(Errc::invalid_plan, "range_radius must be a number");
    plan.range_radius = j["range_radius"].get<double>();
  }
  if (j.contains("positions")) {
    if (!j["positions"].is_array()) fail(Errc::invalid_plan, "positions must be an array");
    for (const auto& p : j["positions"]) {
      if (!p.is_object() || !p.contains("index") || !p["index"].is_number_integer() || !p.contains("point")) {
        fail(Errc::invalid_plan, "each position needs an integer index and a point");
      }
      ScanPosition pos;
      pos.index = p["index"].get<int>();
      pos.point = point_from_json(p["point"]);
      pos.label = p.value("label", std::string());
      plan.positions.push_back(std::move(pos));
    }
  }
  if (j.contains("targets")) {
    if (!j["targets"].is_array()) fail(Errc::invalid_plan, "targets must be an array");
    for (const auto& t : j["targets"]) {
      if (!t.is_object() || !t.contains("point")) fail(Errc::invalid_plan, "each target needs a point");
      ScanTarget target;
      const std::string kind = t.value("kind", std::string("checkerboard"));
      if (kind == "checkerboard") {
        target.kind = TargetKind::checkerboard;
      } else if (kind == "sphere") {
        target.kind = TargetKind::sphere;
      } else {
        fail(Errc::invalid_plan, "target kind must be checkerboard or sphere");
      }
      target.point = point_from_json(t["point"]);
      target.height = t.value("height", 0.0);
      plan.targets.push_back(target);
    }
  }
  validate_plan_shape(plan);
  return plan;
}

json plan_to_json(const ScanPlan& plan) {
  json positions = json::array();
  for (const auto& p : plan.positions) {
    positions.push_back({{"index", p.index}, {"point", {p.point.x, p.point.y}}, {"label", p.label}});
  }
  json targets = json::array();
  for (const auto& t : plan.targets) {
    targets.push_back({{"kind", t.kind == TargetKind::sphere ? "sphere" : "checkerboard"},
                       {"point", {t.point.x, t.point.y}},
                       {"height", t.height}});
  }
  return json{{"range_radius", plan.range_radius}, {"positions", positions}, {"targets", targets}};
}

json report_to_json(const PlanReport& r) {
  json edges = json::array();
  for (const auto& [a, b] : r.overlap_edges) edges.push_back({a, b});
  return json{{"coverage_fraction", r.coverage_fraction},
              {"uncovered_cell_count", r.uncovered_cell_count},
              {"floor_cell_count", r.floor_cell_count},
              {"min_coverage", r.min_coverage},
              {"coverage_ok", r.coverage_ok},
              {"overlap_edges", edges},
              {"overlap_connected", r.overlap_connected},
              {"sequence_valid", r.sequence_valid},
              {"passed", r.passed()},
              {"warnings", r.warnings}};
}

}  // namespace twin::scan
