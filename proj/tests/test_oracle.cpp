#include <gtest/gtest.h>

#include <vector>

#include "coverplex/cover_decomp.hpp"
#include "coverplex/generate.hpp"
#include "coverplex/oracle_verify.hpp"

using namespace coverplex;
using rsc::Instance;
using rsc::Schedule;

namespace {

// Every start-time vector in {unused, 1..H}^n.
std::int64_t naive_opt(const Instance& inst, std::int64_t H) {
  const size_t n = inst.sensors.size();
  std::vector<std::int64_t> st(n, 0);
  std::int64_t best = 0;
  while (true) {
    Schedule s;
    for (size_t k = 0; k < n; ++k)
      if (st[k]) s.assignments.push_back({inst.sensors[k].id, st[k]});
    best = std::max(best, std::min(H, rsc::duration(s, inst)));
    size_t k = 0;
    while (k < n && st[k] == H) st[k++] = 0;
    if (k == n) break;
    ++st[k];
  }
  return best;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

}  // namespace

TEST(OptBruteforce, MatchesNaiveEnumeration) {
  gen::Rng rng(5);
  for (int trial = 0; trial < 600; ++trial) {
    int n = static_cast<int>(rng.uniform(1, 5)), m = static_cast<int>(rng.uniform(1, 4));
    auto inst = gen::rsc_uniform(n, m, 3, rng.uniform(0, 1 << 30));
    std::int64_t H = std::min<std::int64_t>(rsc::load(inst).L, 6);
    EXPECT_EQ(rsc_opt_bruteforce(inst, H), naive_opt(inst, H)) << "trial " << trial;
  }
}

TEST(OptBruteforce, SizeLimits) {
  auto big = gen::rsc_uniform(9, 5, 2, 1);
  EXPECT_THROW(rsc_opt_bruteforce(big, 5), std::length_error);
  auto wide = gen::rsc_uniform(3, 9, 2, 1);
  EXPECT_THROW(rsc_opt_bruteforce(wide, 5), std::length_error);
}

TEST(OptBruteforce, SimpleValues) {
  Instance stack{3, {{0, 1, 3, 2}, {1, 1, 3, 3}}};
  EXPECT_EQ(rsc_opt_bruteforce(stack, 100), 5);
  EXPECT_EQ(rsc_opt_bruteforce(stack, 4), 4);
  Instance hole{3, {{0, 1, 1, 2}, {1, 3, 3, 2}}};
  EXPECT_EQ(rsc_opt_bruteforce(hole, 10), 0);
}

TEST(OptBruteforce, GreedyWithinFactorFive) {
  gen::Rng rng(6);
  for (int trial = 0; trial < 500; ++trial) {
    int n = static_cast<int>(rng.uniform(1, 6)), m = static_cast<int>(rng.uniform(1, 6));
    auto inst = gen::rsc_uniform(n, m, 3, rng.uniform(0, 1 << 30));
    std::int64_t L = rsc::load(inst).L;
    std::int64_t opt = rsc_opt_bruteforce(inst, L);
    EXPECT_LE(opt, L);
    EXPECT_GE(rsc::greedy_schedule(inst).M, ceil_div(opt, 5));
  }
}

TEST(OptBruteforce, ExhaustiveSmallSweepHasNoLoadGap) {
  // All multisets of up to 5 sensors on m = 3 with durations <= 3. A schedule
  // shorter than the load needs larger instances than this sweep covers.
  const int m = 3;
  std::vector<rsc::Sensor> types;
  for (int l = 1; l <= m; ++l)
    for (int r = l; r <= m; ++r)
      for (int d = 1; d <= 3; ++d) types.push_back({0, l, r, d});
  long instances = 0, gaps = 0;
  std::vector<size_t> pick;
  auto rec = [&](auto&& self, size_t from) -> void {
    if (!pick.empty()) {
      Instance inst{m, {}};
      for (size_t k = 0; k < pick.size(); ++k) {
        rsc::Sensor s = types[pick[k]];
        s.id = static_cast<std::int64_t>(k);
        inst.sensors.push_back(s);
      }
      std::int64_t L = rsc::load(inst).L;
      std::int64_t opt = rsc_opt_bruteforce(inst, L);
      ++instances;
      EXPECT_LE(opt, L);
      gaps += opt < L;
    }
    if (pick.size() == 5) return;
    for (size_t t = from; t < types.size(); ++t) {
      pick.push_back(t);
      self(self, t);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  RecordProperty("instances", static_cast<int>(instances));
  RecordProperty("gaps", static_cast<int>(gaps));
  EXPECT_GT(instances, 20000);
  EXPECT_EQ(gaps, 0);
}

TEST(VerifyRsc, GreedyPasses) {
  gen::Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    auto inst = gen::rsc_uniform(static_cast<int>(rng.uniform(1, 40)), static_cast<int>(rng.uniform(1, 30)), 8,
                                 rng.uniform(0, 1 << 30));
    auto g = rsc::greedy_schedule(inst);
    auto rep = verify_rsc(inst, g.schedule);
    EXPECT_TRUE(rep.ok()) << to_json(rep).dump();
    EXPECT_EQ(*rep.achieved, g.M);
    EXPECT_LE(*rep.max_coverage, 5);
  }
}

TEST(VerifyRsc, StoppedRunPasses) {
  auto inst = gen::rsc_uniform(40, 20, 8, 3);
  for (std::int64_t stop : {1, 3, 6}) {
    auto g = rsc::greedy_schedule(inst, stop);
    auto rep = verify_rsc(inst, g.schedule, stop);
    EXPECT_TRUE(rep.ok()) << to_json(rep).dump();
    EXPECT_NE(rep.find("stopped-load"), nullptr);
    EXPECT_EQ(rep.find("load-bound"), nullptr);
  }
}

TEST(VerifyRsc, CatchesMutations) {
  Instance inst{4, {{0, 1, 4, 2}, {1, 2, 3, 1}, {2, 1, 2, 1}, {3, 3, 4, 1}}};
  // duplicate and unknown ids, bad times
  EXPECT_FALSE(verify_rsc(inst, Schedule{{{0, 1}, {0, 3}}}).ok());
  EXPECT_FALSE(verify_rsc(inst, Schedule{{{7, 1}}}).ok());
  EXPECT_FALSE(verify_rsc(inst, Schedule{{{0, 0}}}).ok());
  // inner sensor scheduled before its outer one
  auto nest = verify_rsc(inst, Schedule{{{1, 1}, {0, 2}}});
  ASSERT_NE(nest.find("nested-order"), nullptr);
  EXPECT_FALSE(nest.find("nested-order")->pass);
  EXPECT_EQ(nest.find("nested-order")->witness["inner"], 1);
  // inner starts while the outer is still active
  auto overlap = verify_rsc(inst, Schedule{{{0, 1}, {1, 2}}});
  EXPECT_FALSE(overlap.find("nested-order")->pass);
  // six identical sensors stacked at one time
  Instance six{2, {}};
  for (int k = 0; k < 6; ++k) six.sensors.push_back({k, 1, 2, 1});
  Schedule crowd;
  for (int k = 0; k < 6; ++k) crowd.assignments.push_back({k, 1});
  auto cov = verify_rsc(six, crowd);
  EXPECT_FALSE(cov.find("coverage<=5")->pass);
  EXPECT_EQ(*cov.max_coverage, 6);
  // a schedule far below the load
  auto weak = verify_rsc(six, Schedule{{{0, 1}}});
  EXPECT_FALSE(weak.find("load-bound")->pass);
}

TEST(VerifyColoring, VacuousAndSizeMismatch) {
  ConvexPolygon sq = gen::polygon_family("square");
  std::vector<Point> pts = {{1, 1}, {2, 2}};
  auto rep = verify_coloring(sq, pts, std::vector<int>{0, 0}, 0, 2);
  EXPECT_TRUE(rep.ok());
  EXPECT_NE(rep.find("vacuous"), nullptr);
  EXPECT_FALSE(verify_coloring(sq, pts, std::vector<int>{1}, 1, 1).ok());
}

TEST(VerifyColoring, HandExample) {
  ConvexPolygon sq(std::vector<Point>{{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  std::vector<Point> pts = {{0, 0}, {1, 2}, {2, 1}};
  // any two points form a heavy set; both others together miss (0,0)
  EXPECT_TRUE(verify_coloring(sq, pts, std::vector<int>{0, 1, 1}, 1, 2).ok());
  auto bad = verify_coloring(sq, pts, std::vector<int>{1, 0, 0}, 1, 2);
  EXPECT_FALSE(bad.ok());
  const Check* c = bad.find("heavy-wedges-have-all-colors");
  ASSERT_NE(c, nullptr);
  EXPECT_EQ(c->witness["missing_color"], 1);
  EXPECT_TRUE(verify_coloring(sq, pts, std::vector<int>{1, 1, 1}, 1, 2).ok());
}

TEST(VerifyColoring, MutationIsDetected) {
  ConvexPolygon p = gen::polygon_family("pentagon");
  const std::int64_t k = 128 * 5;
  auto pts = gen::uniform_points(2400, 300, 44);
  Decomposition d = decompose_points(p, pts, k);
  ASSERT_GE(d.colors.T, 1);
  EXPECT_TRUE(verify_coloring(p, pts, d.colors.color, d.colors.T, k).ok());
  // erase color 1 entirely
  auto mutated = d.colors.color;
  for (int& c : mutated)
    if (c == 1) c = 0;
  auto rep = verify_coloring(p, pts, mutated, d.colors.T, k);
  EXPECT_FALSE(rep.ok());
  const Check* c = rep.find("heavy-wedges-have-all-colors");
  ASSERT_NE(c, nullptr);
  EXPECT_EQ(c->witness["missing_color"], 1);
  EXPECT_GE(c->witness["load"].get<std::int64_t>(), k);
}

TEST(VerifyColoring, AgreesWithRandomApexSampling) {
  gen::Rng rng(45);
  ConvexPolygon p = gen::polygon_family("triangle");
  const std::int64_t k = 12;
  const int T = 6;
  int failures = 0;
  for (int trial = 0; trial < 20; ++trial) {
    auto pts = gen::uniform_points(120, 40, rng.uniform(0, 1 << 20));
    std::vector<int> colors(pts.size());
    for (auto& c : colors) c = static_cast<int>(rng.uniform(0, T));
    auto rep = verify_coloring(p, pts, colors, T, k);
    auto count = [&](const WedgeRef& w, std::vector<int>& seen) {
      std::int64_t load = 0;
      for (size_t q = 0; q < pts.size(); ++q)
        if (wedge_contains(p, w, pts[q])) {
          ++load;
          seen[static_cast<size_t>(colors[q])] = 1;
        }
      return load;
    };
    if (!rep.ok()) {
      ++failures;
      // the witness is a real heavy wedge missing the named color
      const auto& w = rep.find("heavy-wedges-have-all-colors")->witness;
      WedgeRef ref{w["vertex"].get<int>(), RationalPoint(Rational::parse(w["apex"][0]), Rational::parse(w["apex"][1]))};
      std::vector<int> seen(T + 1, 0);
      EXPECT_GE(count(ref, seen), k);
      EXPECT_EQ(seen[w["missing_color"].get<size_t>()], 0);
      continue;
    }
    // a passing coloring survives random apexes
    for (int s = 0; s < 400; ++s) {
      WedgeRef ref{static_cast<int>(rng.uniform(0, 2)),
                   RationalPoint(Rational(rng.uniform(-100, 500), 10), Rational(rng.uniform(-100, 500), 10))};
      std::vector<int> seen(T + 1, 0);
      if (count(ref, seen) < k) continue;
      for (int c = 1; c <= T; ++c) EXPECT_EQ(seen[static_cast<size_t>(c)], 1);
    }
  }
  EXPECT_GT(failures, 0);
}
