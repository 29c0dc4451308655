#pragma once

// Restricted Strip Cover: sensors are integer intervals of a universe
// {1..m} with positive durations. greedy_schedule assigns start times one
// sensor per iteration; no point is ever covered by more than five sensors
// at once, so the schedule lasts at least a fifth of the load.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace coverplex::rsc {

struct Sensor {
  std::int64_t id = 0;
  int l = 1;  // range [l, r], 1 <= l <= r <= m
  int r = 1;
  std::int64_t d = 1;

  bool live_at(int x) const { return l <= x && x <= r; }
  friend bool operator==(const Sensor&, const Sensor&) = default;
};

struct Instance {
  int m = 0;
  std::vector<Sensor> sensors;

  void validate() const {
    if (m < 1) throw std::invalid_argument("coverplex: universe size must be positive");
    std::map<std::int64_t, int> seen;
    for (const auto& s : sensors) {
      if (s.l < 1 || s.l > s.r || s.r > m) throw std::invalid_argument("coverplex: sensor range outside universe");
      if (s.d < 1) throw std::invalid_argument("coverplex: sensor duration must be positive");
      if (seen[s.id]++) throw std::invalid_argument("coverplex: duplicate sensor id");
    }
  }
  friend bool operator==(const Instance&, const Instance&) = default;
};

struct Assignment {
  std::int64_t id = 0;
  std::int64_t t = 1;
  friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Start times, in the order they were assigned.
struct Schedule {
  std::vector<Assignment> assignments;
  friend bool operator==(const Schedule&, const Schedule&) = default;
};

struct Loads {
  std::vector<std::int64_t> at;  // at[x] for x in 1..m; at[0] unused
  std::int64_t L = 0;
};

inline Loads load(const Instance& inst) {
  Loads out;
  out.at.assign(static_cast<size_t>(inst.m) + 2, 0);
  std::vector<std::int64_t> diff(static_cast<size_t>(inst.m) + 2, 0);
  for (const auto& s : inst.sensors) {
    diff[static_cast<size_t>(s.l)] += s.d;
    diff[static_cast<size_t>(s.r) + 1] -= s.d;
  }
  std::int64_t run = 0;
  out.L = std::numeric_limits<std::int64_t>::max();
  for (int x = 1; x <= inst.m; ++x) {
    run += diff[static_cast<size_t>(x)];
    out.at[static_cast<size_t>(x)] = run;
    out.L = std::min(out.L, run);
  }
  if (inst.m < 1) out.L = 0;
  return out;
}

/// M(S, x) for every x in 1..m (index 0 and m+1 hold the infinite boundary).
/// Works for arbitrary schedules, not only contiguous ones.
inline std::vector<std::int64_t> durations(const Schedule& sched, const Instance& inst) {
  constexpr std::int64_t inf = std::numeric_limits<std::int64_t>::max();
  std::map<std::int64_t, const Sensor*> by_id;
  for (const auto& s : inst.sensors) by_id[s.id] = &s;
  std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> runs(static_cast<size_t>(inst.m) + 2);
  for (const auto& a : sched.assignments) {
    auto it = by_id.find(a.id);
    if (it == by_id.end()) continue;
    const Sensor& s = *it->second;
    for (int x = s.l; x <= s.r; ++x) runs[static_cast<size_t>(x)].push_back({a.t, a.t + s.d - 1});
  }
  std::vector<std::int64_t> out(static_cast<size_t>(inst.m) + 2, 0);
  out.front() = inf;
  out.back() = inf;
  for (int x = 1; x <= inst.m; ++x) {
    auto& r = runs[static_cast<size_t>(x)];
    std::sort(r.begin(), r.end());
    std::int64_t covered = 0;
    for (const auto& [from, to] : r) {
      if (from > covered + 1) break;
      covered = std::max(covered, to);
    }
    out[static_cast<size_t>(x)] = covered;
  }
  return out;
}

inline std::int64_t duration_at(const Schedule& sched, const Instance& inst, int x) {
  return durations(sched, inst)[static_cast<size_t>(x)];
}

inline std::int64_t duration(const Schedule& sched, const Instance& inst) {
  auto d = durations(sched, inst);
  std::int64_t m = std::numeric_limits<std::int64_t>::max();
  for (int x = 1; x <= inst.m; ++x) m = std::min(m, d[static_cast<size_t>(x)]);
  return inst.m >= 1 ? m : 0;
}

/// Index into inst.sensors of the unassigned sensor live at x reaching furthest
/// right; ties prefer the smaller left end, then the smaller id.
inline std::optional<size_t> dominant_right(const Instance& inst, const std::vector<char>& assigned, int x) {
  std::optional<size_t> best;
  for (size_t k = 0; k < inst.sensors.size(); ++k) {
    const Sensor& s = inst.sensors[k];
    if (assigned[k] || !s.live_at(x)) continue;
    if (!best) {
      best = k;
      continue;
    }
    const Sensor& b = inst.sensors[*best];
    if (s.r != b.r ? s.r > b.r : (s.l != b.l ? s.l < b.l : s.id < b.id)) best = k;
  }
  return best;
}

/// Mirror of dominant_right: furthest left, then larger right end, then smaller id.
inline std::optional<size_t> dominant_left(const Instance& inst, const std::vector<char>& assigned, int x) {
  std::optional<size_t> best;
  for (size_t k = 0; k < inst.sensors.size(); ++k) {
    const Sensor& s = inst.sensors[k];
    if (assigned[k] || !s.live_at(x)) continue;
    if (!best) {
      best = k;
      continue;
    }
    const Sensor& b = inst.sensors[*best];
    if (s.l != b.l ? s.l < b.l : (s.r != b.r ? s.r > b.r : s.id < b.id)) best = k;
  }
  return best;
}

/// One loop iteration of the greedy scheduler.
struct Step {
  std::int64_t id = 0;
  std::int64_t t = 0;
  int i = 0;  // first uncovered coordinate at time t
  int j = 0;  // end of the uncovered run starting at i
  bool right_going = true;
  int closed() const { return right_going ? i : j; }
};

struct GreedyResult {
  Schedule schedule;
  std::vector<Step> steps;
  std::int64_t M = 0;
  bool stopped_early = false;
};

/// The greedy scheduler. With stop_at set, the loop also ends as soon as the
/// schedule duration reaches the threshold.
inline GreedyResult greedy_schedule(const Instance& inst, std::optional<std::int64_t> stop_at = std::nullopt) {
  inst.validate();
  constexpr std::int64_t inf = std::numeric_limits<std::int64_t>::max();
  const int m = inst.m;
  GreedyResult out;
  std::vector<char> assigned(inst.sensors.size(), 0);
  // Every start time equals M(S)+1 <= M(S,x)+1, so coverage at each x is a
  // prefix of time and M(S,x) is simply the furthest covered time.
  std::vector<std::int64_t> horizon(static_cast<size_t>(m) + 2, 0);
  horizon[0] = inf;
  horizon[static_cast<size_t>(m) + 1] = inf;

  auto current_M = [&] { return *std::min_element(horizon.begin() + 1, horizon.begin() + m + 1); };

  while (true) {
    const std::int64_t M = current_M();
    if (stop_at && M >= *stop_at) {
      out.stopped_early = true;
      break;
    }
    const std::int64_t t = M + 1;
    int i = 1;
    while (horizon[static_cast<size_t>(i)] >= t) ++i;
    int j = i;
    while (j + 1 <= m && horizon[static_cast<size_t>(j) + 1] < t) ++j;

    auto right = dominant_right(inst, assigned, i);
    if (!right) break;
    size_t chosen = *right;
    bool right_going = true;
    if (inst.sensors[*right].live_at(j)) {
      auto left = dominant_left(inst, assigned, j);
      if (horizon[static_cast<size_t>(i) - 1] < horizon[static_cast<size_t>(j) + 1]) {
        chosen = *left;
        right_going = false;
      }
    }
    const Sensor& s = inst.sensors[chosen];
    assigned[chosen] = 1;
    for (int x = s.l; x <= s.r; ++x) horizon[static_cast<size_t>(x)] = std::max(horizon[static_cast<size_t>(x)], t + s.d - 1);
    out.schedule.assignments.push_back({s.id, t});
    out.steps.push_back({s.id, t, i, j, right_going});
  }
  out.M = current_M();
  return out;
}

/// Number of active sensors covering (x, t) for x in 1..m and t in 1..horizon.
struct CoverageProfile {
  int m = 0;
  std::int64_t horizon = 0;
  std::vector<int> counts;  // row-major: (t-1) * m + (x-1)

  int at(int x, std::int64_t t) const {
    if (x < 1 || x > m || t < 1 || t > horizon) return 0;
    return counts[static_cast<size_t>((t - 1) * m + (x - 1))];
  }
};

inline CoverageProfile coverage_profile(const Schedule& sched, const Instance& inst) {
  std::map<std::int64_t, const Sensor*> by_id;
  for (const auto& s : inst.sensors) by_id[s.id] = &s;
  CoverageProfile out;
  out.m = inst.m;
  for (const auto& a : sched.assignments) {
    auto it = by_id.find(a.id);
    if (it != by_id.end() && a.t >= 1) out.horizon = std::max(out.horizon, a.t + it->second->d - 1);
  }
  out.counts.assign(static_cast<size_t>(out.horizon * inst.m), 0);
  for (const auto& a : sched.assignments) {
    auto it = by_id.find(a.id);
    if (it == by_id.end() || a.t < 1) continue;
    const Sensor& s = *it->second;
    for (std::int64_t t = a.t; t < a.t + s.d; ++t)
      for (int x = s.l; x <= s.r; ++x) ++out.counts[static_cast<size_t>((t - 1) * inst.m + (x - 1))];
  }
  return out;
}

}  // namespace coverplex::rsc
