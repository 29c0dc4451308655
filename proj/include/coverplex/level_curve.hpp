#pragma once

// Level curves of i-wedge loads over a finite point set.
//
// For a fixed vertex i, every point is given two sheared integer coordinates
// (s, t) so that the i-wedge with apex x contains p exactly when
// s(p) >= s(x) and t(p) >= t(x). Points are then ranked along each axis with
// ties broken by point index, which realizes the symbolic perturbation that
// puts the set in general position. A wedge is identified by a lattice apex
// (a, b): it holds the points whose s-rank is >= a and t-rank is >= b. Every
// apex of the plane falls into exactly one lattice class, and all apexes of a
// class see the same points.
//
// The level curve C_i(r) is the boundary of the region of apexes with load
// >= r. Its lattice classes, listed from head (ray parallel to p_{i-1}p_i)
// to tail (ray parallel to p_i p_{i+1}), are the canonical curve positions.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "coverplex/geometry.hpp"

namespace coverplex {

/// Lattice apex in rank space.
struct Apex {
  int s = 0;
  int t = 0;
  friend bool operator==(const Apex&, const Apex&) = default;
};

/// Cone coordinates and ranks of a point set for one vertex wedge.
class WedgeFrame {
 public:
  WedgeFrame() = default;

  WedgeFrame(const ConvexPolygon& poly, int vertex, std::span<const Point> pts)
      : vertex_(poly.wrap(vertex)), cone_(cone_at(poly, vertex)) {
    const int128 c = cross(cone_.head, cone_.tail);
    sgn_ = detail::sign(c);
    abs_cross_ = detail::narrow(c < 0 ? -c : c);
    const size_t n = pts.size();
    s_.resize(n);
    t_.resize(n);
    for (size_t k = 0; k < n; ++k) {
      Dir v{pts[k].x, pts[k].y};
      s_[k] = detail::narrow(cross(v, cone_.tail) * sgn_);
      t_[k] = detail::narrow(cross(cone_.head, v) * sgn_);
    }
    by_s_ = sorted_by(s_);
    by_t_ = sorted_by(t_);
    rank_s_.resize(n);
    rank_t_.resize(n);
    for (size_t r = 0; r < n; ++r) {
      rank_s_[by_s_[r]] = static_cast<int>(r);
      rank_t_[by_t_[r]] = static_cast<int>(r);
    }
  }

  int vertex() const { return vertex_; }
  size_t size() const { return s_.size(); }
  const Cone& cone() const { return cone_; }

  std::int64_t coord_s(size_t k) const { return s_[k]; }
  std::int64_t coord_t(size_t k) const { return t_[k]; }
  int rank_s(size_t k) const { return rank_s_[k]; }
  int rank_t(size_t k) const { return rank_t_[k]; }
  /// Point index holding the given s-rank.
  size_t at_rank_s(int r) const { return by_s_[static_cast<size_t>(r)]; }
  size_t at_rank_t(int r) const { return by_t_[static_cast<size_t>(r)]; }

  bool contains(const Apex& a, size_t k) const { return rank_s_[k] >= a.s && rank_t_[k] >= a.t; }

  /// A plane point whose wedge realizes the lattice apex (exactly, up to the
  /// symbolic perturbation of tied coordinates).
  RationalPoint apex_point(const Apex& a) const {
    std::int64_t sv = axis_value(a.s, by_s_, s_);
    std::int64_t tv = axis_value(a.t, by_t_, t_);
    Rational ac(abs_cross_);
    Rational x = (Rational(sv) * Rational(cone_.head.x) + Rational(tv) * Rational(cone_.tail.x)) / ac;
    Rational y = (Rational(sv) * Rational(cone_.head.y) + Rational(tv) * Rational(cone_.tail.y)) / ac;
    return {x, y};
  }

 private:
  static std::vector<size_t> sorted_by(const std::vector<std::int64_t>& key) {
    std::vector<size_t> idx(key.size());
    std::iota(idx.begin(), idx.end(), size_t{0});
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return key[a] != key[b] ? key[a] < key[b] : a < b; });
    return idx;
  }

  static std::int64_t axis_value(int rank, const std::vector<size_t>& order, const std::vector<std::int64_t>& key) {
    if (order.empty()) return 0;
    if (rank >= static_cast<int>(order.size())) return key[order.back()] + 1;
    return key[order[static_cast<size_t>(rank)]];
  }

  int vertex_ = 0;
  Cone cone_;
  int sgn_ = 1;
  std::int64_t abs_cross_ = 1;
  std::vector<std::int64_t> s_, t_;
  std::vector<size_t> by_s_, by_t_;
  std::vector<int> rank_s_, rank_t_;
};

struct LevelCurve {
  int vertex = 0;
  std::int64_t level = 0;
  /// Canonical positions, head to tail: s non-decreasing, t non-increasing.
  std::vector<Apex> positions;

  bool empty() const { return positions.empty(); }
  size_t size() const { return positions.size(); }
  Apex head() const { return positions.front(); }
  Apex tail() const { return positions.back(); }
};

/// Closed range of curve positions; empty when lo > hi.
struct CurveInterval {
  int lo = 0;
  int hi = -1;
  bool empty() const { return lo > hi; }
  bool contains(int pos) const { return lo <= pos && pos <= hi; }
  friend bool operator==(const CurveInterval&, const CurveInterval&) = default;
};

namespace detail {

class Fenwick {
 public:
  explicit Fenwick(size_t n) : tree_(n + 1, 0) {}
  void add(size_t pos, std::int64_t w) {
    for (size_t i = pos + 1; i < tree_.size(); i += i & (~i + 1)) tree_[i] += w;
  }
  /// Sum over [0, pos).
  std::int64_t prefix(size_t pos) const {
    std::int64_t s = 0;
    for (size_t i = pos; i > 0; i -= i & (~i + 1)) s += tree_[i];
    return s;
  }

 private:
  std::vector<std::int64_t> tree_;
};

inline std::int64_t weight_of(std::span<const std::int64_t> weights, size_t k) {
  return weights.empty() ? 1 : weights[k];
}

}  // namespace detail

/// Number (or total weight) of points of `pts` inside the geometric i-wedge at `apex`.
inline std::int64_t wedge_load(const ConvexPolygon& poly, int i, const RationalPoint& apex, std::span<const Point> pts,
                               std::span<const std::int64_t> weights = {}) {
  std::int64_t total = 0;
  WedgeRef w{i, apex};
  for (size_t k = 0; k < pts.size(); ++k)
    if (wedge_contains(poly, w, pts[k])) total += detail::weight_of(weights, k);
  return total;
}

/// Load of the members inside the lattice wedge at `apex`.
inline std::int64_t wedge_load(const WedgeFrame& frame, const Apex& apex, std::span<const size_t> members,
                               std::span<const std::int64_t> weights = {}) {
  std::int64_t total = 0;
  for (size_t k : members)
    if (frame.contains(apex, k)) total += detail::weight_of(weights, k);
  return total;
}

/// Builds C_i(r) for every point of the frame. Weights empty means unit weights.
/// Throws std::domain_error when the total load is below r (no apex reaches it).
inline LevelCurve build_level_curve(const WedgeFrame& frame, std::int64_t r, std::span<const std::int64_t> weights = {}) {
  if (r <= 0) throw std::invalid_argument("coverplex: level must be positive");
  const size_t n = frame.size();
  std::int64_t total = 0;
  for (size_t k = 0; k < n; ++k) total += detail::weight_of(weights, k);
  if (total < r) throw std::domain_error("coverplex: level exceeds total load; the level region is empty");

  // top[a] = largest b with load(a, b) >= r, or -1. Sweep a downwards, adding
  // the point of s-rank a to a tree indexed by t-rank.
  std::vector<int> top(n + 2, -1);
  detail::Fenwick tree(n);
  std::int64_t inserted = 0;
  for (int a = static_cast<int>(n); a >= 0; --a) {
    if (a < static_cast<int>(n)) {
      size_t k = frame.at_rank_s(a);
      std::int64_t w = detail::weight_of(weights, k);
      tree.add(static_cast<size_t>(frame.rank_t(k)), w);
      inserted += w;
    }
    if (inserted < r) continue;
    // suffix(b) = inserted - prefix(b) is non-increasing; find the last b with suffix >= r.
    int lo = 0, hi = static_cast<int>(n);
    while (lo < hi) {
      int mid = (lo + hi + 1) / 2;
      if (inserted - tree.prefix(static_cast<size_t>(mid)) >= r)
        lo = mid;
      else
        hi = mid - 1;
    }
    top[static_cast<size_t>(a)] = lo;
  }

  LevelCurve curve;
  curve.vertex = frame.vertex();
  curve.level = r;
  // (a, b) is on the boundary iff it is in the region and (a+1, b+1) is not.
  for (int a = 0; a <= static_cast<int>(n); ++a) {
    int b_hi = top[static_cast<size_t>(a)];
    if (b_hi < 0) break;
    int b_lo = std::max(0, top[static_cast<size_t>(a) + 1]);
    for (int b = b_hi; b >= b_lo; --b) curve.positions.push_back({a, b});
  }
  return curve;
}

/// Curve positions whose wedge contains point k of the frame.
inline CurveInterval interval_of(const LevelCurve& curve, const WedgeFrame& frame, size_t k) {
  const int rs = frame.rank_s(k);
  const int rt = frame.rank_t(k);
  const auto& pos = curve.positions;
  auto first_t = std::partition_point(pos.begin(), pos.end(), [&](const Apex& a) { return a.t > rt; });
  auto past_s = std::partition_point(pos.begin(), pos.end(), [&](const Apex& a) { return a.s <= rs; });
  return {static_cast<int>(first_t - pos.begin()), static_cast<int>(past_s - pos.begin()) - 1};
}

/// Load of the members at every curve position, by offline dominance counting.
inline std::vector<std::int64_t> loads_on_curve(const LevelCurve& curve, const WedgeFrame& frame,
                                                std::span<const size_t> members,
                                                std::span<const std::int64_t> weights = {}) {
  std::vector<std::int64_t> out(curve.size(), 0);
  if (curve.empty()) return out;
  std::vector<size_t> pts(members.begin(), members.end());
  std::sort(pts.begin(), pts.end(), [&](size_t a, size_t b) { return frame.rank_s(a) > frame.rank_s(b); });
  detail::Fenwick tree(frame.size() + 1);
  std::int64_t inserted = 0;
  size_t next = 0;
  // positions are sorted by s ascending; walk them backwards
  for (size_t p = curve.size(); p-- > 0;) {
    const Apex& a = curve.positions[p];
    while (next < pts.size() && frame.rank_s(pts[next]) >= a.s) {
      std::int64_t w = detail::weight_of(weights, pts[next]);
      tree.add(static_cast<size_t>(frame.rank_t(pts[next])), w);
      inserted += w;
      ++next;
    }
    out[p] = inserted - tree.prefix(static_cast<size_t>(a.t));
  }
  return out;
}

/// Minimum member load over the curve; 0 for an empty member set.
inline std::int64_t min_load_on_curve(const LevelCurve& curve, const WedgeFrame& frame, std::span<const size_t> members,
                                      std::span<const std::int64_t> weights = {}) {
  auto loads = loads_on_curve(curve, frame, members, weights);
  if (loads.empty()) return 0;
  return *std::min_element(loads.begin(), loads.end());
}

/// Starts of the maximal runs of curve positions over which W_i(c) ∩ Q is constant.
inline std::vector<int> canonical_positions(const LevelCurve& curve, const WedgeFrame& frame,
                                            std::span<const size_t> q) {
  std::vector<int> out;
  if (curve.empty()) return out;
  std::vector<char> starts(curve.size() + 1, 0);
  starts[0] = 1;
  for (size_t k : q) {
    CurveInterval iv = interval_of(curve, frame, k);
    if (iv.empty()) continue;
    starts[static_cast<size_t>(iv.lo)] = 1;
    starts[static_cast<size_t>(iv.hi) + 1] = 1;
  }
  for (size_t p = 0; p < curve.size(); ++p)
    if (starts[p]) out.push_back(static_cast<int>(p));
  return out;
}

/// Plane coordinates of the curve's canonical positions with consecutive duplicates removed.
inline std::vector<RationalPoint> curve_chain(const LevelCurve& curve, const WedgeFrame& frame) {
  std::vector<RationalPoint> chain;
  for (const Apex& a : curve.positions) {
    RationalPoint p = frame.apex_point(a);
    if (chain.empty() || !(chain.back() == p)) chain.push_back(p);
  }
  return chain;
}

namespace detail {

// Range add, max query and point removal over curve positions.
class MaxTree {
 public:
  explicit MaxTree(size_t n) : n_(n), mx_(4 * n + 4, 0), lazy_(4 * n + 4, 0) {}
  void add(size_t lo, size_t hi, std::int64_t w) { add(1, 0, n_ - 1, lo, hi, w); }
  std::int64_t max() const { return mx_[1]; }
  // Index of a maximal position, which is then removed.
  size_t pop_max() { return pop(1, 0, n_ - 1); }

 private:
  static constexpr std::int64_t kGone = std::numeric_limits<std::int64_t>::min() / 4;
  void push(size_t v) {
    for (size_t c : {2 * v, 2 * v + 1}) {
      mx_[c] += lazy_[v];
      lazy_[c] += lazy_[v];
    }
    lazy_[v] = 0;
  }
  void add(size_t v, size_t l, size_t r, size_t lo, size_t hi, std::int64_t w) {
    if (hi < l || r < lo) return;
    if (lo <= l && r <= hi) {
      mx_[v] += w;
      lazy_[v] += w;
      return;
    }
    push(v);
    size_t m = (l + r) / 2;
    add(2 * v, l, m, lo, hi, w);
    add(2 * v + 1, m + 1, r, lo, hi, w);
    mx_[v] = std::max(mx_[2 * v], mx_[2 * v + 1]);
  }
  size_t pop(size_t v, size_t l, size_t r) {
    if (l == r) {
      mx_[v] = kGone;
      return l;
    }
    push(v);
    size_t m = (l + r) / 2;
    size_t at = mx_[2 * v] >= mx_[2 * v + 1] ? pop(2 * v, l, m) : pop(2 * v + 1, m + 1, r);
    mx_[v] = std::max(mx_[2 * v], mx_[2 * v + 1]);
    return at;
  }

  size_t n_;
  std::vector<std::int64_t> mx_, lazy_;
};

}  // namespace detail

/// Members lying in some curve wedge where, for every j in A_i, they are not
/// among the first `reserve` units of weight in decreasing <_j order.
inline std::vector<char> unreserved_members(const ConvexPolygon& poly, std::span<const Point> pts,
                                            const LevelCurve& curve, const WedgeFrame& frame,
                                            std::span<const size_t> live, std::int64_t reserve,
                                            std::span<const std::int64_t> weights = {}) {
  const size_t N = pts.size(), C = curve.size();
  std::vector<char> in(N, 0);
  if (C == 0) return in;
  std::vector<CurveInterval> iv(N);
  for (size_t p : live) iv[p] = interval_of(curve, frame, p);

  // Per order: rank[p] in the order, and thr[c] = rank of the point whose weight
  // brings position c to the reserve. p is withheld at c iff rank[p] <= thr[c].
  std::vector<std::vector<std::int64_t>> rank, thr;
  for (int j : compute_A(poly, frame.vertex())) {
    std::vector<std::int64_t> key(N);
    for (size_t p : live) key[p] = order_key(poly, j, pts[p]);
    std::vector<size_t> ord(live.begin(), live.end());
    std::sort(ord.begin(), ord.end(), [&](size_t a, size_t b) { return key[a] != key[b] ? key[a] > key[b] : a > b; });
    std::vector<std::int64_t> r(N, 0);
    std::vector<std::int64_t> t(C, reserve <= 0 ? -1 : static_cast<std::int64_t>(N));
    detail::MaxTree tree(C);
    for (size_t k = 0; k < ord.size(); ++k) {
      size_t p = ord[k];
      r[p] = static_cast<std::int64_t>(k);
      if (reserve <= 0 || iv[p].empty()) continue;
      tree.add(static_cast<size_t>(iv[p].lo), static_cast<size_t>(iv[p].hi), detail::weight_of(weights, p));
      while (tree.max() >= reserve) t[tree.pop_max()] = static_cast<std::int64_t>(k);
    }
    rank.push_back(std::move(r));
    thr.push_back(std::move(t));
  }
  for (size_t p : live) {
    for (int c = iv[p].lo; c <= iv[p].hi && !in[p]; ++c) {
      bool withheld = false;
      for (size_t o = 0; o < rank.size() && !withheld; ++o) withheld = rank[o][p] <= thr[o][static_cast<size_t>(c)];
      if (!withheld) in[p] = 1;
    }
  }
  return in;
}

}  // namespace coverplex
