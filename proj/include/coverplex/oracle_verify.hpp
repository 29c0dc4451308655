#pragma once

// Brute-force oracles and verifiers. Nothing here calls into the algorithms
// it checks: wedge membership, loads and coverage are recomputed from the
// definitions.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "coverplex/geometry.hpp"
#include "coverplex/planar_cover.hpp"
#include "coverplex/rsc.hpp"

namespace coverplex {

struct Check {
  std::string name;
  bool pass = true;
  nlohmann::json witness;  // null on pass
};

struct VerificationReport {
  std::vector<Check> checks;
  std::optional<double> alpha;
  std::optional<double> ratio;
  std::optional<std::int64_t> achieved;
  std::optional<std::int64_t> load;
  std::optional<int> max_coverage;

  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  }
  const Check* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
  void add(std::string name, bool pass, nlohmann::json witness = nullptr) {
    checks.push_back({std::move(name), pass, pass ? nlohmann::json() : std::move(witness)});
  }
};

inline nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json j;
  j["checks"] = nlohmann::json::array();
  for (const auto& c : r.checks) j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"witness", c.witness}});
  j["alpha"] = r.alpha ? nlohmann::json(*r.alpha) : nlohmann::json();
  j["ratio"] = r.ratio ? nlohmann::json(*r.ratio) : nlohmann::json();
  if (r.achieved) j["M"] = *r.achieved;
  if (r.load) j["L"] = *r.load;
  if (r.max_coverage) j["max_coverage"] = *r.max_coverage;
  return j;
}

// ---------------------------------------------------------------------------
// Restricted strip cover

/// Exact optimum duration for tiny instances, capped at `horizon`.
///
/// Search rule: the earliest uncovered (time, coordinate) must be closed by an
/// unused sensor live there, and starting that sensor exactly at that time is
/// never worse than starting it earlier (all earlier times are covered). Any
/// schedule of duration D can be rebuilt this way, so the search is exhaustive.
inline std::int64_t rsc_opt_bruteforce(const rsc::Instance& inst, std::int64_t horizon) {
  if (inst.sensors.size() > 8 || inst.m > 8) throw std::length_error("coverplex: brute force limited to n <= 8, m <= 8");
  inst.validate();
  const int m = inst.m;
  const size_t n = inst.sensors.size();
  std::vector<std::int64_t> until(static_cast<size_t>(m) + 1, 0);  // covered prefix per coordinate
  std::vector<char> used(n, 0);
  std::int64_t best = 0;

  auto bound = [&]() {
    std::int64_t ub = horizon;
    for (int x = 1; x <= m; ++x) {
      std::int64_t reach = until[static_cast<size_t>(x)];
      for (size_t k = 0; k < n; ++k)
        if (!used[k] && inst.sensors[k].live_at(x)) reach += inst.sensors[k].d;
      ub = std::min(ub, reach);
    }
    return ub;
  };

  auto search = [&](auto&& self) -> void {
    std::int64_t front = std::numeric_limits<std::int64_t>::max();
    int x0 = 1;
    for (int x = 1; x <= m; ++x) {
      if (until[static_cast<size_t>(x)] < front) {
        front = until[static_cast<size_t>(x)];
        x0 = x;
      }
    }
    best = std::max(best, std::min(front, horizon));
    if (front >= horizon || bound() <= best) return;
    const std::int64_t t = front + 1;
    std::vector<rsc::Sensor> tried;
    for (size_t k = 0; k < n; ++k) {
      const rsc::Sensor& s = inst.sensors[k];
      if (used[k] || !s.live_at(x0)) continue;
      bool dup = std::any_of(tried.begin(), tried.end(),
                             [&](const rsc::Sensor& o) { return o.l == s.l && o.r == s.r && o.d == s.d; });
      if (dup) continue;
      tried.push_back(s);
      std::vector<std::int64_t> saved(until.begin() + s.l, until.begin() + s.r + 1);
      used[k] = 1;
      for (int x = s.l; x <= s.r; ++x) {
        // coverage stays a prefix: every coordinate is covered up to t-1
        until[static_cast<size_t>(x)] = std::max(until[static_cast<size_t>(x)], t + s.d - 1);
      }
      self(self);
      used[k] = 0;
      std::copy(saved.begin(), saved.end(), until.begin() + s.l);
    }
  };
  if (m >= 1) search(search);
  return best;
}

/// Checks a greedy schedule against the coverage, nesting and load properties.
/// With stop_at, the run is treated as stopped at that duration threshold.
inline VerificationReport verify_rsc(const rsc::Instance& inst, const rsc::Schedule& sched,
                                     std::optional<std::int64_t> stop_at = std::nullopt) {
  VerificationReport rep;
  std::map<std::int64_t, size_t> index;
  for (size_t k = 0; k < inst.sensors.size(); ++k) index[inst.sensors[k].id] = k;

  // schedule validity
  std::vector<std::int64_t> start(inst.sensors.size(), 0);
  std::vector<std::int64_t> order(inst.sensors.size(), -1);
  nlohmann::json bad;
  for (size_t pos = 0; pos < sched.assignments.size(); ++pos) {
    const auto& a = sched.assignments[pos];
    auto it = index.find(a.id);
    if (it == index.end() || a.t < 1 || order[it->second] >= 0) {
      bad = {{"id", a.id}, {"t", a.t}};
      break;
    }
    start[it->second] = a.t;
    order[it->second] = static_cast<std::int64_t>(pos);
  }
  rep.add("valid-schedule", bad.is_null(), bad);
  if (!bad.is_null()) return rep;

  // coverage(x, t) by direct counting
  std::int64_t horizon = 0;
  for (size_t k = 0; k < inst.sensors.size(); ++k)
    if (order[k] >= 0) horizon = std::max(horizon, start[k] + inst.sensors[k].d - 1);
  int max_cov = 0;
  nlohmann::json over;
  std::int64_t M = std::numeric_limits<std::int64_t>::max();
  for (int x = 1; x <= inst.m; ++x) {
    std::int64_t run = 0;
    bool broken = false;
    for (std::int64_t t = 1; t <= horizon; ++t) {
      int c = 0;
      for (size_t k = 0; k < inst.sensors.size(); ++k) {
        const auto& s = inst.sensors[k];
        if (order[k] >= 0 && s.l <= x && x <= s.r && start[k] <= t && t < start[k] + s.d) ++c;
      }
      if (c > max_cov) max_cov = c;
      if (c > 5 && over.is_null()) over = {{"x", x}, {"t", t}, {"coverage", c}};
      if (c == 0) broken = true;
      if (!broken) run = t;
    }
    M = std::min(M, run);
  }
  if (inst.m < 1) M = 0;
  rep.max_coverage = max_cov;
  rep.add("coverage<=5", over.is_null(), over);

  // nested ranges: the outer sensor runs out before the inner one starts
  nlohmann::json nest;
  for (size_t u = 0; u < inst.sensors.size() && nest.is_null(); ++u) {
    if (order[u] < 0) continue;
    const auto& su = inst.sensors[u];
    for (size_t v = 0; v < inst.sensors.size(); ++v) {
      const auto& sv = inst.sensors[v];
      bool strictly_inside = sv.l <= su.l && su.r <= sv.r && (sv.l < su.l || su.r < sv.r);
      if (u == v || !strictly_inside) continue;
      if (order[v] < 0 || order[v] > order[u] || start[u] < start[v] + sv.d) {
        nest = {{"inner", su.id}, {"outer", sv.id}};
        break;
      }
    }
  }
  rep.add("nested-order", nest.is_null(), nest);

  std::int64_t L = std::numeric_limits<std::int64_t>::max();
  std::int64_t d_max = 0;
  for (const auto& s : inst.sensors) d_max = std::max(d_max, s.d);
  for (int x = 1; x <= inst.m; ++x) {
    std::int64_t lx = 0;
    for (const auto& s : inst.sensors)
      if (s.l <= x && x <= s.r) lx += s.d;
    L = std::min(L, lx);
  }
  if (inst.m < 1) L = 0;
  rep.achieved = M;
  rep.load = L;
  if (L > 0) rep.ratio = static_cast<double>(M) / static_cast<double>(L);

  if (!stop_at) {
    bool ok = 5 * M >= L;
    rep.add("load-bound", ok, nlohmann::json{{"M", M}, {"L", L}});
  } else {
    nlohmann::json heavy;
    const std::int64_t cap = 5 * (*stop_at + d_max);
    for (int x = 1; x <= inst.m && heavy.is_null(); ++x) {
      std::int64_t live = 0;
      for (size_t k = 0; k < inst.sensors.size(); ++k)
        if (order[k] >= 0 && inst.sensors[k].l <= x && x <= inst.sensors[k].r) live += inst.sensors[k].d;
      if (live > cap) heavy = {{"x", x}, {"assigned_load", live}, {"cap", cap}};
    }
    rep.add("stopped-load", heavy.is_null(), heavy);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Wedge colorings

/// Checks that every wedge of `poly` holding at least k points of `pts` holds
/// each color 1..T. Colors are per point, 0 = uncolored.
///
/// Every wedge has the same content as one whose apex coordinates (in the
/// cone's own affine frame) are taken from points, and growing a wedge never
/// loses colors, so it suffices to check, for each distinct first coordinate,
/// the smallest heavy wedge.
inline VerificationReport verify_coloring(const ConvexPolygon& poly, std::span<const Point> pts,
                                          std::span<const int> colors, int T, std::int64_t k) {
  VerificationReport rep;
  if (colors.size() != pts.size()) {
    rep.add("coloring-size", false, nlohmann::json{{"points", pts.size()}, {"colors", colors.size()}});
    return rep;
  }
  if (T <= 0) {
    rep.add("vacuous", true);
    rep.add("alpha-infinite", true);
    return rep;
  }
  rep.alpha = static_cast<double>(k) / static_cast<double>(T);
  const size_t N = pts.size();
  nlohmann::json witness;
  for (int i = 0; i < poly.size() && witness.is_null(); ++i) {
    const RationalPoint head = poly.vertex(i - 1) - poly.vertex(i);
    const RationalPoint tail = poly.vertex(i + 1) - poly.vertex(i);
    const Rational det = cross(head, tail);
    std::vector<Rational> alpha(N), beta(N);
    for (size_t p = 0; p < N; ++p) {
      RationalPoint v(pts[p]);
      alpha[p] = cross(v, tail) / det;
      beta[p] = cross(head, v) / det;
    }
    std::vector<size_t> by_beta(N);
    for (size_t p = 0; p < N; ++p) by_beta[p] = p;
    std::sort(by_beta.begin(), by_beta.end(), [&](size_t a, size_t b) { return beta[a] > beta[b]; });
    std::vector<Rational> cuts(alpha);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<int> seen(static_cast<size_t>(T) + 1);
    for (const Rational& a : cuts) {
      std::int64_t count = 0;
      std::fill(seen.begin(), seen.end(), 0);
      size_t pos = 0;
      while (pos < N && count < k) {
        const Rational level = beta[by_beta[pos]];
        for (; pos < N && beta[by_beta[pos]] == level; ++pos) {
          size_t p = by_beta[pos];
          if (alpha[p] < a) continue;
          ++count;
          int c = colors[p];
          if (c >= 1 && c <= T) seen[static_cast<size_t>(c)] = 1;
        }
        if (count >= k) {
          for (int c = 1; c <= T; ++c) {
            if (seen[static_cast<size_t>(c)]) continue;
            RationalPoint apex{a * head.x + level * tail.x, a * head.y + level * tail.y};
            witness = {{"vertex", i},
                       {"apex", {apex.x.str(), apex.y.str()}},
                       {"load", count},
                       {"missing_color", c}};
            break;
          }
        }
      }
      if (!witness.is_null()) break;
    }
  }
  rep.add("heavy-wedges-have-all-colors", witness.is_null(), witness);
  return rep;
}

// ---------------------------------------------------------------------------
// Planar sensor cover

/// Simulates the schedule: every universe point must be covered at each time
/// 1..M. Membership uses the polygon itself, not its reflection.
inline VerificationReport verify_planar(const PlanarInstance& inst, const rsc::Schedule& sched,
                                        std::optional<std::int64_t> claimed = std::nullopt) {
  VerificationReport rep;
  std::map<std::int64_t, const PlanarSensor*> by_id;
  for (const auto& s : inst.sensors) by_id[s.id] = &s;
  std::map<std::int64_t, int> seen;
  nlohmann::json bad;
  for (const auto& a : sched.assignments) {
    if (!by_id.count(a.id) || a.t < 1 || seen[a.id]++) {
      bad = {{"id", a.id}, {"t", a.t}};
      break;
    }
  }
  rep.add("valid-schedule", bad.is_null(), bad);
  if (!bad.is_null()) return rep;

  const RationalPoint o = inst.polygon.centroid();
  std::int64_t M = std::numeric_limits<std::int64_t>::max();
  std::int64_t L = std::numeric_limits<std::int64_t>::max();
  nlohmann::json weakest;
  for (const Point& u : inst.universe) {
    std::vector<std::pair<std::int64_t, std::int64_t>> runs;
    std::int64_t load = 0;
    for (const auto& s : inst.sensors) {
      // u in P(center)  <=>  u - center + O in P
      RationalPoint local = RationalPoint(u) - RationalPoint(s.center) + o;
      if (inst.polygon.contains(local)) load += s.d;
    }
    for (const auto& a : sched.assignments) {
      const PlanarSensor& s = *by_id[a.id];
      RationalPoint local = RationalPoint(u) - RationalPoint(s.center) + o;
      if (inst.polygon.contains(local)) runs.push_back({a.t, a.t + s.d - 1});
    }
    std::sort(runs.begin(), runs.end());
    std::int64_t covered = 0;
    for (const auto& [from, to] : runs) {
      if (from > covered + 1) break;
      covered = std::max(covered, to);
    }
    L = std::min(L, load);
    if (covered < M) {
      M = covered;
      weakest = {{"point", {u.x, u.y}}, {"covered_until", covered}};
    }
  }
  if (inst.universe.empty()) M = L = 0;
  rep.achieved = M;
  rep.load = L;
  if (L > 0) rep.ratio = static_cast<double>(M) / static_cast<double>(L);
  if (claimed) rep.add("claimed-duration", M >= *claimed, nlohmann::json{{"claimed", *claimed}, {"weakest", weakest}});
  return rep;
}

}  // namespace coverplex
