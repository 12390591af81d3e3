// Copyright 2026 The twinfm Authors
// SPDX-License-Identifier: Apache-2.0

// Deliberately naive reference implementations. They share no code with the
// library beyond its data types.

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "model.hpp"
#include "scan_plan.hpp"

namespace twin::oracle {

// Classic PNPOLY, one point at a time.
inline bool pnpoly(const scan::Ring& ring, double x, double y) {
  bool c = false;
  for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
    if (((ring[i].y > y) != (ring[j].y > y)) &&
        (x < (ring[j].x - ring[i].x) * (y - ring[i].y) / (ring[j].y - ring[i].y) + ring[i].x)) {
      c = !c;
    }
  }
  return c;
}

struct GridCount {
  std::int64_t floor = 0;
  std::int64_t covered = 0;
};

// Every cell of the grid, every position, no pruning.
inline GridCount brute_coverage(const scan::FloorOutline& floor, const scan::ScanPlan& plan, double step) {
  double min_x = floor.exterior[0].x, max_x = min_x, min_y = floor.exterior[0].y, max_y = min_y;
  for (const auto& p : floor.exterior) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const auto nx = static_cast<std::int64_t>(std::ceil((max_x - min_x) / step));
  const auto ny = static_cast<std::int64_t>(std::ceil((max_y - min_y) / step));
  GridCount out;
  for (std::int64_t i = 0; i < nx; ++i) {
    for (std::int64_t j = 0; j < ny; ++j) {
      const double cx = min_x + (static_cast<double>(i) + 0.5) * step;
      const double cy = min_y + (static_cast<double>(j) + 0.5) * step;
      if (!pnpoly(floor.exterior, cx, cy)) continue;
      bool hole = false;
      for (const auto& h : floor.holes) hole = hole || pnpoly(h, cx, cy);
      if (hole) continue;
      ++out.floor;
      bool covered = false;
      for (const auto& p : plan.positions) {
        const double dx = cx - p.point.x;
        const double dy = cy - p.point.y;
        if (dx * dx + dy * dy <= plan.range_radius * plan.range_radius) covered = true;
      }
      if (covered) ++out.covered;
    }
  }
  return out;
}

// All pairs (index order) closer than two radii.
inline std::vector<std::pair<int, int>> pairwise_overlaps(const scan::ScanPlan& plan) {
  std::vector<std::pair<int, int>> out;
  for (std::size_t a = 0; a < plan.positions.size(); ++a) {
    for (std::size_t b = a + 1; b < plan.positions.size(); ++b) {
      const auto& p = plan.positions[a];
      const auto& q = plan.positions[b];
      if (std::hypot(p.point.x - q.point.x, p.point.y - q.point.y) < 2.0 * plan.range_radius) {
        out.emplace_back(std::min(p.index, q.index), std::max(p.index, q.index));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Day-by-day scan of the horizon.
inline std::vector<Date> day_scan(Date start, int frequency, Date from, Date to) {
  std::vector<Date> out;
  for (Date d = from; d <= to; d += std::chrono::days{1}) {
    const auto diff = (d - start).count();
    if (diff >= 0 && diff % frequency == 0) out.push_back(d);
  }
  return out;
}

struct DebounceMarks {
  std::vector<std::size_t> raises;
  std::vector<std::size_t> clears;
};

// Whole-series scan: a raise sits where a run of out-of-range samples reaches
// raise_debounce while no alarm is up; a clear where an in-range run reaches
// clear_debounce while one is.
inline DebounceMarks debounce_scan(const std::vector<double>& series, double low, double high, int raise_n,
                                   int clear_n) {
  DebounceMarks m;
  bool up = false;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const bool out = series[i] < low || series[i] > high;
    std::size_t run = 0;
    for (std::size_t k = i + 1; k-- > 0;) {
      const bool o = series[k] < low || series[k] > high;
      if (o != out) break;
      ++run;
    }
    if (out && !up && run >= static_cast<std::size_t>(raise_n)) {
      up = true;
      m.raises.push_back(i);
    } else if (!out && up && run >= static_cast<std::size_t>(clear_n)) {
      up = false;
      m.clears.push_back(i);
    }
  }
  return m;
}

}  // namespace twin::oracle
