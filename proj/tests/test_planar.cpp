#include <gtest/gtest.h>

#include <map>
#include <numeric>
#include <vector>

#include "coverplex/cover_decomp.hpp"
#include "coverplex/generate.hpp"
#include "coverplex/oracle_verify.hpp"
#include "coverplex/planar_cover.hpp"

using namespace coverplex;

namespace {

std::int64_t brute_load(const PlanarInstance& inst) {
  std::int64_t L = INT64_MAX;
  for (const auto& u : inst.universe) {
    std::int64_t sum = 0;
    for (const auto& s : inst.sensors)
      if (translate_contains(inst.polygon, s.center, u)) sum += s.d;
    L = std::min(L, sum);
  }
  return inst.universe.empty() ? 0 : L;
}

PlanarInstance unit_instance(const ConvexPolygon& poly, size_t sensors, std::int64_t side, std::uint64_t seed) {
  PlanarInstance inst = gen::planar_clustered(poly, sensors, 12, side, 1, seed);
  for (auto& s : inst.sensors) s.d = 1;
  return inst;
}

}  // namespace

TEST(PlanarLoad, Examples) {
  PlanarInstance inst;
  inst.polygon = gen::polygon_family("square");
  inst.sensors = {{0, {5, 5}, 9}};
  inst.universe = {{3, 3}, {7, 6}};
  EXPECT_EQ(planar_load(inst), 9);
  inst.universe.push_back({40, 40});
  EXPECT_EQ(planar_load(inst), 0);
  inst.universe.clear();
  EXPECT_EQ(planar_load(inst), 0);
}

TEST(PlanarLoad, MatchesDoubleLoop) {
  gen::Rng rng(8);
  for (const auto& name : gen::polygon_family_names()) {
    for (int trial = 0; trial < 5; ++trial) {
      auto inst = gen::planar_clustered(gen::polygon_family(name), 60, 15, 20, 9, rng.uniform(0, 1 << 20));
      EXPECT_EQ(planar_load(inst), brute_load(inst)) << name;
    }
  }
}

TEST(PlanarInstance, RejectsBadSensors) {
  PlanarInstance inst;
  inst.polygon = gen::polygon_family("square");
  inst.sensors = {{0, {0, 0}, 0}};
  EXPECT_THROW(inst.validate(), std::invalid_argument);
  inst.sensors = {{0, {0, 0}, 1}, {0, {1, 0}, 1}};
  EXPECT_THROW(inst.validate(), std::invalid_argument);
}

TEST(CurveRsc, FullAndEndIntervals) {
  ConvexPolygon sq(std::vector<Point>{{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  // two points define the staircase; a far point lies in every curve wedge
  std::vector<Point> pts = {{1, 3}, {3, 1}, {9, 9}};
  WedgeFrame f(sq, 0, pts);
  LevelCurve c = build_level_curve(f, 2);
  std::vector<std::int64_t> dur = {4, 5, 6};
  std::vector<size_t> all = {0, 1, 2};
  auto sub = curve_rsc_instance(c, f, all, dur);
  EXPECT_EQ(sub.instance.m, static_cast<int>(c.size()));
  ASSERT_EQ(sub.instance.sensors.size(), 3u);
  std::map<size_t, rsc::Sensor> by_point;
  for (const auto& s : sub.instance.sensors) by_point[sub.back[static_cast<size_t>(s.id)]] = s;
  EXPECT_EQ(by_point[2].l, 1);
  EXPECT_EQ(by_point[2].r, sub.instance.m);
  EXPECT_EQ(by_point[2].d, 6);
  // the two staircase points own opposite ends of the curve and overlap only at the reflex corner
  const auto& a = by_point[0];
  const auto& b = by_point[1];
  EXPECT_TRUE((a.l == 1 && b.r == sub.instance.m) || (b.l == 1 && a.r == sub.instance.m));
  EXPECT_FALSE(a.l == 1 && a.r == sub.instance.m);
  EXPECT_FALSE(b.l == 1 && b.r == sub.instance.m);
  EXPECT_LE(std::min(a.r, b.r) - std::max(a.l, b.l), 0);
}

TEST(CurveRsc, MembershipCrossCheck) {
  gen::Rng rng(3);
  ConvexPolygon p = gen::polygon_family("pentagon");
  auto pts = gen::uniform_points(60, 30, 14);
  std::vector<std::int64_t> dur;
  for (size_t k = 0; k < pts.size(); ++k) dur.push_back(rng.uniform(1, 5));
  for (int i = 0; i < p.size(); ++i) {
    WedgeFrame f(p, i, pts);
    LevelCurve c = build_level_curve(f, 40, dur);
    std::vector<size_t> subset;
    for (size_t k = 0; k < pts.size(); ++k)
      if (rng.uniform(0, 1)) subset.push_back(k);
    auto sub = curve_rsc_instance(c, f, subset, dur);
    std::map<size_t, const rsc::Sensor*> by_point;
    for (const auto& s : sub.instance.sensors) by_point[sub.back[static_cast<size_t>(s.id)]] = &s;
    for (size_t k : subset) {
      for (size_t pos = 0; pos < c.size(); ++pos) {
        bool live = by_point.count(k) && by_point[k]->live_at(static_cast<int>(pos) + 1);
        EXPECT_EQ(live, f.contains(c.positions[pos], k));
      }
    }
  }
}

TEST(CurveRsc, IdenticalSensorsStackOnTheCurve) {
  ConvexPolygon p = gen::polygon_family("hexagon");
  std::vector<Point> pts(6, Point{4, 4});
  std::vector<std::int64_t> dur = {3, 1, 4, 1, 5, 9};
  WedgeFrame f(p, 2, pts);
  LevelCurve c = build_level_curve(f, 10, dur);
  std::vector<size_t> all(pts.size());
  std::iota(all.begin(), all.end(), size_t{0});
  auto sub = curve_rsc_instance(c, f, all, dur);
  std::vector<size_t> full;
  for (const auto& s : sub.instance.sensors)
    if (s.l == 1 && s.r == sub.instance.m) full.push_back(sub.back[static_cast<size_t>(s.id)]);
  auto g = rsc::greedy_schedule(sub.instance);
  std::int64_t want = 0;
  for (size_t k : full) want += dur[k];
  EXPECT_GE(g.M, want);
}

TEST(VerifyPlanar, EmptyAndTrivialSchedules) {
  auto inst = gen::planar_clustered(gen::polygon_family("square"), 30, 8, 12, 7, 2);
  auto empty = verify_planar(inst, rsc::Schedule{});
  EXPECT_TRUE(empty.ok());
  EXPECT_EQ(*empty.achieved, 0);
  rsc::Schedule all;
  for (const auto& s : inst.sensors) all.assignments.push_back({s.id, 1});
  auto rep = verify_planar(inst, all);
  std::int64_t want = INT64_MAX;
  for (const auto& u : inst.universe) {
    std::int64_t best = 0;
    for (const auto& s : inst.sensors)
      if (translate_contains(inst.polygon, s.center, u)) best = std::max(best, s.d);
    want = std::min(want, best);
  }
  EXPECT_EQ(*rep.achieved, want);
  EXPECT_EQ(*rep.load, planar_load(inst));
}

TEST(VerifyPlanar, RejectsInvalidSchedules) {
  auto inst = gen::planar_clustered(gen::polygon_family("square"), 10, 4, 12, 3, 1);
  EXPECT_FALSE(verify_planar(inst, rsc::Schedule{{{0, 1}, {0, 2}}}).ok());
  EXPECT_FALSE(verify_planar(inst, rsc::Schedule{{{99, 1}}}).ok());
  EXPECT_FALSE(verify_planar(inst, rsc::Schedule{{{0, 0}}}).ok());
  EXPECT_FALSE(verify_planar(inst, rsc::Schedule{}, 1).ok());
}

TEST(PlanSchedule, TrivialBelowThreshold) {
  auto inst = gen::planar_clustered(gen::polygon_family("triangle"), 20, 5, 10, 3, 4);
  auto plan = plan_schedule(inst);
  EXPECT_TRUE(plan.trivial);
  EXPECT_EQ(plan.schedule.assignments.size(), inst.sensors.size());
  EXPECT_TRUE(verify_planar(inst, plan.schedule).ok());
}

TEST(PlanSchedule, CertifiedDurationOnHeavyInstance) {
  // 100x100 square: cell side 25, beta 16, and the whole cluster in one cell
  ConvexPolygon sq = gen::polygon_family("square", 10);
  auto inst = gen::planar_clustered(sq, 1200, 20, 20, 16, 12);
  auto plan = plan_schedule(inst);
  ASSERT_FALSE(plan.trivial);
  EXPECT_GE(plan.L, 64 * 4 * plan.grid.beta);
  EXPECT_GE(plan.certified, 1);
  auto rep = verify_planar(inst, plan.schedule, plan.certified);
  EXPECT_TRUE(rep.ok()) << to_json(rep).dump();
  EXPECT_GE(*rep.achieved, plan.certified);
  for (const auto& rec : plan.trace) {
    if (rec.curve_empty) continue;
    EXPECT_LE(rec.max_assigned_live_load, 5 * (rec.t + rec.d_max));
    if (rec.t >= 1) EXPECT_GE(rec.achieved, rec.t);
  }
  // each sensor starts at most once
  std::map<std::int64_t, int> seen;
  for (const auto& a : plan.schedule.assignments) EXPECT_EQ(seen[a.id]++, 0);
}

TEST(PlanSchedule, UnitDurationsTrackTheColoring) {
  ConvexPolygon sq = gen::polygon_family("square", 10);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    auto inst = unit_instance(sq, 2600, 20, seed);
    auto plan = plan_schedule(inst);
    ASSERT_FALSE(plan.trivial);
    std::vector<Point> centers;
    for (const auto& s : inst.sensors) centers.push_back(s.center);
    Decomposition d = decompose_points(reflect(sq), centers, plan.k_cell);
    EXPECT_LE(std::abs(plan.certified - d.colors.T), 1) << "seed " << seed;
    auto rep = verify_planar(inst, plan.schedule, plan.certified);
    EXPECT_TRUE(rep.ok()) << to_json(rep).dump();
  }
}

TEST(PlanSchedule, Deterministic) {
  ConvexPolygon p = gen::polygon_family("pentagon", 8);
  auto inst = gen::planar_clustered(p, 400, 10, 30, 6, 5);
  auto a = plan_schedule(inst), b = plan_schedule(inst);
  ASSERT_EQ(a.schedule.assignments.size(), b.schedule.assignments.size());
  for (size_t k = 0; k < a.schedule.assignments.size(); ++k) {
    EXPECT_EQ(a.schedule.assignments[k].id, b.schedule.assignments[k].id);
    EXPECT_EQ(a.schedule.assignments[k].t, b.schedule.assignments[k].t);
  }
}
