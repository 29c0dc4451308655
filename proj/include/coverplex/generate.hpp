#pragma once

// Seeded instance generators. Only std::mt19937_64 output is used (its
// sequence is fixed by the standard) and ranges are drawn by rejection, so a
// seed yields the same instance on every platform.

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "coverplex/geometry.hpp"
#include "coverplex/planar_cover.hpp"
#include "coverplex/rsc.hpp"

namespace coverplex::gen {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw std::invalid_argument("coverplex: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(engine_());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return lo + static_cast<std::int64_t>(v % span);
  }

 private:
  std::mt19937_64 engine_;
};

/// Named convex polygons with integer vertices, scaled by `scale`.
inline ConvexPolygon polygon_family(const std::string& name, std::int64_t scale = 1) {
  std::vector<Point> v;
  if (name == "triangle")
    v = {{0, 0}, {8, 0}, {3, 7}};
  else if (name == "square")
    v = {{0, 0}, {10, 0}, {10, 10}, {0, 10}};
  else if (name == "pentagon")
    v = {{0, 0}, {10, 0}, {13, 7}, {5, 12}, {-3, 6}};
  else if (name == "hexagon")
    v = {{0, 0}, {8, 0}, {12, 6}, {8, 12}, {0, 12}, {-4, 6}};
  else if (name == "skew-hexagon")
    v = {{0, 0}, {9, 1}, {13, 6}, {10, 12}, {2, 11}, {-3, 5}};
  else
    throw std::invalid_argument("coverplex: unknown polygon family '" + name + "'");
  for (auto& p : v) {
    p.x *= scale;
    p.y *= scale;
  }
  return ConvexPolygon(v);
}

inline const std::vector<std::string>& polygon_family_names() {
  static const std::vector<std::string> names = {"triangle", "square", "pentagon", "hexagon", "skew-hexagon"};
  return names;
}

/// Intervals with both endpoints uniform in [1, m], durations uniform in [1, d_max].
inline rsc::Instance rsc_uniform(int n, int m, std::int64_t d_max, std::uint64_t seed) {
  Rng rng(seed);
  rsc::Instance inst;
  inst.m = m;
  for (int k = 0; k < n; ++k) {
    auto a = static_cast<int>(rng.uniform(1, m));
    auto b = static_cast<int>(rng.uniform(1, m));
    inst.sensors.push_back({k, std::min(a, b), std::max(a, b), rng.uniform(1, d_max)});
  }
  return inst;
}

/// A chain of ranges, each containing the next (equal ranges allowed).
inline rsc::Instance rsc_nested(int n, int m, std::int64_t d_max, std::uint64_t seed) {
  Rng rng(seed);
  rsc::Instance inst;
  inst.m = m;
  int l = 1, r = m;
  for (int k = 0; k < n; ++k) {
    inst.sensors.push_back({k, l, r, rng.uniform(1, d_max)});
    if (r > l && rng.uniform(0, 1) == 1) {
      if (rng.uniform(0, 1) == 0)
        ++l;
      else
        --r;
    }
  }
  return inst;
}

/// Points uniform in the box [0, side)^2.
inline std::vector<Point> uniform_points(size_t count, std::int64_t side, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Point> pts;
  pts.reserve(count);
  for (size_t k = 0; k < count; ++k) pts.push_back({rng.uniform(0, side - 1), rng.uniform(0, side - 1)});
  return pts;
}

/// Translates of `poly` with centers clustered in a box of the given side,
/// durations in [1, d_max], and universe points inside a smaller central box.
inline PlanarInstance planar_clustered(const ConvexPolygon& poly, size_t sensors, size_t universe,
                                       std::int64_t cluster_side, std::int64_t d_max, std::uint64_t seed) {
  Rng rng(seed);
  PlanarInstance inst;
  inst.polygon = poly;
  for (size_t k = 0; k < sensors; ++k) {
    Point c{rng.uniform(0, cluster_side - 1), rng.uniform(0, cluster_side - 1)};
    inst.sensors.push_back({static_cast<std::int64_t>(k), c, rng.uniform(1, d_max)});
  }
  const std::int64_t lo = cluster_side / 3, hi = std::max(lo, 2 * cluster_side / 3);
  for (size_t k = 0; k < universe; ++k) inst.universe.push_back({rng.uniform(lo, hi), rng.uniform(lo, hi)});
  return inst;
}

}  // namespace coverplex::gen
