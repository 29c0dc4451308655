#pragma once

// Decomposition of k-fold wedge covers into color classes.
//
//   compute_cover        partial cover of one level curve with t colors, each
//                        color class covering every curve position at most twice
//   decompose_points     vertex-by-vertex coloring of a point set so that every
//                        heavy wedge sees all common colors
//   decompose_translates the translate version: dualize, split into grid cells
//                        and decompose each cell

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "coverplex/geometry.hpp"
#include "coverplex/level_curve.hpp"

namespace coverplex {

/// Thrown when a curve position has fewer than 2t candidate points.
class CoverPreconditionError : public std::runtime_error {
 public:
  CoverPreconditionError(int position, Apex apex, std::int64_t load, std::int64_t needed)
      : std::runtime_error(message(position, apex, load, needed)), position_(position), apex_(apex) {}
  int position() const { return position_; }
  Apex apex() const { return apex_; }

 private:
  static std::string message(int position, Apex apex, std::int64_t load, std::int64_t needed) {
    std::ostringstream os;
    os << "coverplex: curve position " << position << " (lattice apex " << apex.s << "," << apex.t << ") holds "
       << load << " candidates, needs " << needed;
    return os.str();
  }
  int position_;
  Apex apex_;
};

struct CoverResult {
  /// Per frame point: round color 1..t, or 0 when uncolored.
  std::vector<int> color;
  /// Point indices kept in each round, in kept order.
  std::vector<std::vector<size_t>> rounds;
};

/// Colors points of `q` with 1..t so that every curve wedge holds every color
/// and at most 2t colored points.
inline CoverResult compute_cover(const LevelCurve& curve, const WedgeFrame& frame, std::span<const size_t> q,
                                 std::int64_t t) {
  CoverResult out;
  out.color.assign(frame.size(), 0);
  if (t <= 0 || curve.empty()) return out;

  auto loads = loads_on_curve(curve, frame, q);
  for (size_t p = 0; p < loads.size(); ++p) {
    if (loads[p] < 2 * t) throw CoverPreconditionError(static_cast<int>(p), curve.positions[p], loads[p], 2 * t);
  }

  const int K = static_cast<int>(curve.size());
  struct Item {
    size_t id;
    CurveInterval iv;
  };
  std::vector<Item> remaining;
  for (size_t k : q) {
    CurveInterval iv = interval_of(curve, frame, k);
    if (!iv.empty()) remaining.push_back({k, iv});
  }
  // Containing intervals come before the intervals they contain.
  std::sort(remaining.begin(), remaining.end(), [](const Item& a, const Item& b) {
    if (a.iv.lo != b.iv.lo) return a.iv.lo < b.iv.lo;
    if (a.iv.hi != b.iv.hi) return a.iv.hi > b.iv.hi;
    return a.id < b.id;
  });

  std::vector<int> cover(static_cast<size_t>(K) + 1);
  for (std::int64_t round = 1; round <= t; ++round) {
    std::vector<Item> kept;
    int reach = -1;
    for (const Item& it : remaining) {
      // With lo sorted, [lo, reach] is already covered, so the interval adds
      // something exactly when it reaches past `reach`.
      if (it.iv.hi > reach) {
        kept.push_back(it);
        reach = it.iv.hi;
      }
    }
    std::fill(cover.begin(), cover.end(), 0);
    for (const Item& it : kept)
      for (int p = it.iv.lo; p <= it.iv.hi; ++p) ++cover[static_cast<size_t>(p)];
    for (int p = 0; p < K; ++p) {
      if (cover[static_cast<size_t>(p)] == 0) throw CoverPreconditionError(p, curve.positions[static_cast<size_t>(p)], 0, 1);
    }
    // Drop redundant intervals scanning from the last kept one back. Removing an
    // interval only lowers coverage, so already-scanned survivors stay needed and
    // one pass is stable. Scanning backwards drops a contained interval before
    // the one containing it.
    std::vector<char> alive(kept.size(), 1);
    for (size_t idx = kept.size(); idx-- > 0;) {
      const CurveInterval& iv = kept[idx].iv;
      bool redundant = true;
      for (int p = iv.lo; p <= iv.hi && redundant; ++p) redundant = cover[static_cast<size_t>(p)] >= 2;
      if (redundant) {
        alive[idx] = 0;
        for (int p = iv.lo; p <= iv.hi; ++p) --cover[static_cast<size_t>(p)];
      }
    }
    std::vector<size_t> chosen;
    for (size_t idx = 0; idx < kept.size(); ++idx) {
      if (!alive[idx]) continue;
      chosen.push_back(kept[idx].id);
      out.color[kept[idx].id] = static_cast<int>(round);
    }
    out.rounds.push_back(chosen);
    std::erase_if(remaining, [&](const Item& it) { return out.color[it.id] != 0; });
  }
  return out;
}

/// Per-point coloring: color 1..T is a common color; iteration tags which
/// vertex pass colored the point.
struct ColorAssignment {
  std::vector<int> color;      // 0 = uncolored; may exceed T
  std::vector<int> iteration;  // -1 = uncolored
  int T = 0;
};

struct IterationRecord {
  int vertex = 0;
  bool curve_empty = false;       // no wedge at this vertex reaches k
  bool load_defined = false;      // some remaining curve exists
  std::int64_t L = 0;             // min uncolored load over curves z >= vertex
  std::int64_t reserve = 0;       // floor(L / 2n) points withheld per A_i direction
  std::int64_t t = 0;             // floor(L / 64n)
  std::size_t candidates = 0;     // |X_i|
  std::size_t colored = 0;
  std::int64_t min_candidate_load = 0;  // min over C_i of |W ∩ X_i|
  std::int64_t max_colored_load = 0;    // max over C_i of |W ∩ colored in this pass|
  std::optional<std::int64_t> later_min_load;  // min over C_j, j > vertex, of uncolored load afterwards
};

struct Decomposition {
  ColorAssignment colors;
  std::vector<IterationRecord> trace;
  std::vector<WedgeFrame> frames;
  std::vector<LevelCurve> curves;  // C_i(k); empty when no i-wedge reaches k
  std::int64_t k = 0;
};

namespace detail {

inline std::vector<size_t> members_of(const std::vector<char>& mask) {
  std::vector<size_t> out;
  for (size_t k = 0; k < mask.size(); ++k)
    if (mask[k]) out.push_back(k);
  return out;
}

}  // namespace detail

/// Colors `pts` so that every i-wedge of `poly` holding at least k points
/// contains a point of every color 1..T. `poly` is the polygon whose vertex
/// wedges are used (the reflected polygon in the translate setting).
inline Decomposition decompose_points(const ConvexPolygon& poly, std::span<const Point> pts, std::int64_t k) {
  if (k < 1) throw std::invalid_argument("coverplex: k must be at least 1");
  const int n = poly.size();
  const size_t N = pts.size();
  Decomposition d;
  d.k = k;
  d.colors.color.assign(N, 0);
  d.colors.iteration.assign(N, -1);
  for (int i = 0; i < n; ++i) {
    d.frames.emplace_back(poly, i, pts);
    if (static_cast<std::int64_t>(N) >= k)
      d.curves.push_back(build_level_curve(d.frames.back(), k));
    else
      d.curves.push_back(LevelCurve{i, k, {}});
  }

  std::vector<char> uncolored(N, 1);
  bool any_curve = false;
  std::int64_t T = -1;
  for (int i = 0; i < n; ++i) {
    IterationRecord rec;
    rec.vertex = i;
    const LevelCurve& curve = d.curves[static_cast<size_t>(i)];
    const WedgeFrame& frame = d.frames[static_cast<size_t>(i)];
    rec.curve_empty = curve.empty();
    std::vector<size_t> live = detail::members_of(uncolored);

    for (int z = i; z < n; ++z) {
      const LevelCurve& cz = d.curves[static_cast<size_t>(z)];
      if (cz.empty()) continue;
      std::int64_t m = min_load_on_curve(cz, d.frames[static_cast<size_t>(z)], live);
      rec.L = rec.load_defined ? std::min(rec.L, m) : m;
      rec.load_defined = true;
    }
    if (curve.empty()) {
      d.trace.push_back(rec);
      continue;
    }
    any_curve = true;
    rec.reserve = rec.L / (2 * n);
    rec.t = rec.L / (64 * n);

    // X_i: for each curve position, the uncolored wedge points minus, for every
    // j in A_i, the first `reserve` of them in decreasing <_j order.
    std::vector<char> in_x = unreserved_members(poly, pts, curve, frame, live, rec.reserve);
    std::vector<size_t> x = detail::members_of(in_x);
    rec.candidates = x.size();
    rec.min_candidate_load = min_load_on_curve(curve, frame, x);

    CoverResult cover = compute_cover(curve, frame, x, rec.t);
    std::vector<size_t> colored_now;
    for (size_t p = 0; p < N; ++p) {
      if (cover.color[p] == 0) continue;
      d.colors.color[p] = cover.color[p];
      d.colors.iteration[p] = i;
      uncolored[p] = 0;
      colored_now.push_back(p);
    }
    rec.colored = colored_now.size();
    if (!colored_now.empty()) {
      auto loads = loads_on_curve(curve, frame, colored_now);
      rec.max_colored_load = *std::max_element(loads.begin(), loads.end());
    }

    std::vector<size_t> after = detail::members_of(uncolored);
    for (int j = i + 1; j < n; ++j) {
      const LevelCurve& cj = d.curves[static_cast<size_t>(j)];
      if (cj.empty()) continue;
      std::int64_t m = min_load_on_curve(cj, d.frames[static_cast<size_t>(j)], after);
      rec.later_min_load = rec.later_min_load ? std::min(*rec.later_min_load, m) : m;
    }
    T = T < 0 ? rec.t : std::min(T, rec.t);
    d.trace.push_back(rec);
  }
  d.colors.T = any_curve ? static_cast<int>(T) : 0;
  return d;
}

struct CellDecomposition {
  CellId cell;
  std::vector<size_t> members;  // indices into the translate list
  Decomposition result;
};

struct TranslateDecomposition {
  std::vector<std::vector<size_t>> classes;
  std::vector<int> class_of;  // 0-based class per translate
  int T = 0;
  GridSpec grid;
  std::int64_t k_cell = 0;
  std::vector<CellDecomposition> cells;
};

/// Splits translates of `poly` (given by their centers) into classes, each
/// covering every point that at least k of the translates cover.
inline TranslateDecomposition decompose_translates(const ConvexPolygon& poly, std::span<const Point> centers,
                                                   std::int64_t k) {
  if (k < 1) throw std::invalid_argument("coverplex: k must be at least 1");
  TranslateDecomposition out;
  const ConvexPolygon reflected = reflect(poly);
  out.grid = grid_spec(reflected);
  out.k_cell = k / out.grid.beta;
  out.class_of.assign(centers.size(), 0);

  int T = -1;
  if (out.k_cell >= 1) {
    for (auto& [cell, members] : cell_partition(centers, out.grid)) {
      std::vector<Point> local;
      local.reserve(members.size());
      for (size_t m : members) local.push_back(centers[m]);
      CellDecomposition cd{cell, members, decompose_points(reflected, local, out.k_cell)};
      bool constrained = std::any_of(cd.result.curves.begin(), cd.result.curves.end(),
                                     [](const LevelCurve& c) { return !c.empty(); });
      if (constrained) T = T < 0 ? cd.result.colors.T : std::min(T, cd.result.colors.T);
      out.cells.push_back(std::move(cd));
    }
  }
  out.T = std::max(T, 0);
  const int classes = std::max(out.T, 1);
  out.classes.assign(static_cast<size_t>(classes), {});
  for (const auto& cd : out.cells) {
    for (size_t local = 0; local < cd.members.size(); ++local) {
      int c = cd.result.colors.color[local];
      out.class_of[cd.members[local]] = (c >= 1 && c <= out.T) ? c - 1 : 0;
    }
  }
  for (size_t m = 0; m < centers.size(); ++m) out.classes[static_cast<size_t>(out.class_of[m])].push_back(m);
  return out;
}

}  // namespace coverplex
