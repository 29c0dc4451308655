#pragma once

// Planar sensor cover for translates of a convex polygon with arbitrary
// durations. The vertex-by-vertex skeleton of decompose_points is kept, with
// duration-weighted loads, and the per-curve partial cover is replaced by the
// greedy strip-cover scheduler run on the curve.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "coverplex/geometry.hpp"
#include "coverplex/level_curve.hpp"
#include "coverplex/rsc.hpp"

namespace coverplex {

struct PlanarSensor {
  std::int64_t id = 0;
  Point center;
  std::int64_t d = 1;
  friend bool operator==(const PlanarSensor&, const PlanarSensor&) = default;
};

struct PlanarInstance {
  ConvexPolygon polygon;
  std::vector<PlanarSensor> sensors;
  std::vector<Point> universe;

  void validate() const {
    std::map<std::int64_t, int> seen;
    for (const auto& s : sensors) {
      if (s.d < 1) throw std::invalid_argument("coverplex: sensor duration must be positive");
      if (seen[s.id]++) throw std::invalid_argument("coverplex: duplicate sensor id");
    }
  }
  friend bool operator==(const PlanarInstance&, const PlanarInstance&) = default;
};

/// Minimum over universe points of the total duration of sensors covering it.
inline std::int64_t planar_load(const PlanarInstance& inst) {
  if (inst.universe.empty()) return 0;
  const ConvexPolygon reflected = reflect(inst.polygon);
  std::int64_t L = std::numeric_limits<std::int64_t>::max();
  for (const Point& u : inst.universe) {
    std::int64_t load = 0;
    // u is in P(center) iff center is in the reflected polygon placed at u
    for (const auto& s : inst.sensors)
      if (translate_contains(reflected, u, s.center)) load += s.d;
    L = std::min(L, load);
  }
  return L;
}

/// One-dimensional instance induced on a level curve: coordinate p+1 is curve
/// position p; a sensor's range is its curve interval.
struct CurveRscInstance {
  rsc::Instance instance;
  std::vector<size_t> back;  // 1-D sensor id -> frame point index
};

inline CurveRscInstance curve_rsc_instance(const LevelCurve& curve, const WedgeFrame& frame,
                                           std::span<const size_t> subset, std::span<const std::int64_t> durations) {
  CurveRscInstance out;
  out.instance.m = static_cast<int>(curve.size());
  for (size_t k : subset) {
    CurveInterval iv = interval_of(curve, frame, k);
    if (iv.empty()) continue;
    auto id = static_cast<std::int64_t>(out.back.size());
    out.instance.sensors.push_back({id, iv.lo + 1, iv.hi + 1, durations[k]});
    out.back.push_back(k);
  }
  return out;
}

struct PlanRecord {
  CellId cell;
  int vertex = 0;
  bool curve_empty = false;
  bool load_defined = false;
  std::int64_t L = 0;
  std::int64_t reserve = 0;  // floor(L / 2n) duration withheld per A_i direction
  std::int64_t t = 0;        // stop threshold floor(L / 64n)
  std::size_t candidates = 0;
  std::size_t assigned = 0;
  std::int64_t achieved = 0;               // duration of the curve schedule
  std::int64_t max_assigned_live_load = 0; // max over curve positions
  std::int64_t d_max = 0;
};

struct PlanResult {
  rsc::Schedule schedule;  // ids are planar sensor ids
  std::int64_t L = 0;
  std::int64_t k_cell = 0;
  GridSpec grid;
  bool trivial = false;  // load too small for the reduction; everything starts at 1
  std::int64_t certified = 0;  // min t over blocks with a nonempty curve
  std::vector<PlanRecord> trace;
};

/// Computes a schedule whose duration is within a constant factor of the load.
/// All blocks share the time window starting at 1: a universe point is served
/// by a single (cell, vertex) block, so blocks never need to take turns.
inline PlanResult plan_schedule(const PlanarInstance& inst) {
  inst.validate();
  PlanResult out;
  const ConvexPolygon reflected = reflect(inst.polygon);
  const int n = reflected.size();
  out.L = planar_load(inst);
  out.grid = grid_spec(reflected);
  out.k_cell = out.L / out.grid.beta;
  if (out.k_cell < 1) {
    out.trivial = true;
    for (const auto& s : inst.sensors) out.schedule.assignments.push_back({s.id, 1});
    return out;
  }

  std::vector<Point> centers;
  for (const auto& s : inst.sensors) centers.push_back(s.center);
  std::int64_t certified = -1;

  for (auto& [cell, members] : cell_partition(centers, out.grid)) {
    std::vector<Point> pts;
    std::vector<std::int64_t> dur;
    std::int64_t total = 0;
    for (size_t m : members) {
      pts.push_back(centers[m]);
      dur.push_back(inst.sensors[m].d);
      total += inst.sensors[m].d;
    }
    const size_t N = pts.size();
    std::vector<WedgeFrame> frames;
    std::vector<LevelCurve> curves;
    for (int i = 0; i < n; ++i) {
      frames.emplace_back(reflected, i, pts);
      curves.push_back(total >= out.k_cell ? build_level_curve(frames.back(), out.k_cell, dur)
                                           : LevelCurve{i, out.k_cell, {}});
    }
    std::vector<char> free(N, 1);
    for (int i = 0; i < n; ++i) {
      PlanRecord rec;
      rec.cell = cell;
      rec.vertex = i;
      const LevelCurve& curve = curves[static_cast<size_t>(i)];
      const WedgeFrame& frame = frames[static_cast<size_t>(i)];
      rec.curve_empty = curve.empty();
      std::vector<size_t> live;
      for (size_t p = 0; p < N; ++p)
        if (free[p]) {
          live.push_back(p);
          rec.d_max = std::max(rec.d_max, dur[p]);
        }
      for (int z = i; z < n; ++z) {
        if (curves[static_cast<size_t>(z)].empty()) continue;
        std::int64_t m = min_load_on_curve(curves[static_cast<size_t>(z)], frames[static_cast<size_t>(z)], live, dur);
        rec.L = rec.load_defined ? std::min(rec.L, m) : m;
        rec.load_defined = true;
      }
      if (curve.empty()) {
        out.trace.push_back(rec);
        continue;
      }
      rec.reserve = rec.L / (2 * n);
      rec.t = rec.L / (64 * n);

      std::vector<char> in_x = unreserved_members(reflected, pts, curve, frame, live, rec.reserve, dur);
      std::vector<size_t> x;
      for (size_t p = 0; p < N; ++p)
        if (in_x[p]) x.push_back(p);
      rec.candidates = x.size();

      if (rec.t >= 1) {
        CurveRscInstance sub = curve_rsc_instance(curve, frame, x, dur);
        rsc::GreedyResult g = rsc::greedy_schedule(sub.instance, rec.t);
        rec.achieved = g.M;
        std::vector<size_t> used;
        for (const auto& a : g.schedule.assignments) {
          size_t p = sub.back[static_cast<size_t>(a.id)];
          free[p] = 0;
          used.push_back(p);
          out.schedule.assignments.push_back({inst.sensors[members[p]].id, a.t});
        }
        rec.assigned = used.size();
        if (!used.empty()) {
          auto loads = loads_on_curve(curve, frame, used, dur);
          rec.max_assigned_live_load = *std::max_element(loads.begin(), loads.end());
        }
      }
      certified = certified < 0 ? rec.t : std::min(certified, rec.t);
      out.trace.push_back(rec);
    }
  }
  out.certified = std::max<std::int64_t>(certified, 0);
  return out;
}

}  // namespace coverplex
