// Copyright 2026 The twinfm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "scan_plan.hpp"

namespace twin::testing {

inline scan::FloorOutline rect(double w, double h) { return scan::FloorOutline{{{0, 0}, {w, 0}, {w, h}, {0, h}}, {}}; }

inline scan::ScanPlan plan_at(std::vector<scan::Point> pts, double r = 30.0) {
  scan::ScanPlan p;
  p.range_radius = r;
  int i = 0;
  for (auto pt : pts) p.positions.push_back({++i, pt, ""});
  return p;
}

// Star-shaped polygon with jittered angles, so a disk of radius >= 10 about
// the center stays inside; an optional square column sits at the center.
inline scan::FloorOutline random_floor(std::mt19937_64& rng, bool with_hole) {
  std::uniform_real_distribution<double> radius(20.0, 80.0), jitter(-0.3, 0.3), offset(-50.0, 50.0);
  const double cx = offset(rng), cy = offset(rng);
  const int n = 5 + static_cast<int>(rng() % 8);
  scan::FloorOutline f;
  for (int k = 0; k < n; ++k) {
    const double a = (k + jitter(rng)) * 2.0 * std::numbers::pi / n;
    const double r = radius(rng);
    f.exterior.push_back({cx + r * std::cos(a), cy + r * std::sin(a)});
  }
  if (with_hole) f.holes.push_back({{cx - 3, cy - 3}, {cx + 3, cy - 3}, {cx + 3, cy + 3}, {cx - 3, cy + 3}});
  return f;
}

// 1 to 6 positions scattered over the floor's bounding box plus a margin.
inline scan::ScanPlan random_plan(std::mt19937_64& rng, const scan::FloorOutline& f) {
  double min_x = 1e9, max_x = -1e9, min_y = 1e9, max_y = -1e9;
  for (auto p : f.exterior) {
    min_x = std::min(min_x, p.x), max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y), max_y = std::max(max_y, p.y);
  }
  std::uniform_real_distribution<double> ux(min_x - 10, max_x + 10), uy(min_y - 10, max_y + 10), ur(8.0, 45.0);
  std::vector<scan::Point> pts;
  const int n = 1 + static_cast<int>(rng() % 6);
  for (int i = 0; i < n; ++i) pts.push_back({ux(rng), uy(rng)});
  return plan_at(pts, ur(rng));
}

}  // namespace twin::testing
