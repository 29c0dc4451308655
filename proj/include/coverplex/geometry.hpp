#pragma once

// Exact planar primitives: convex polygons, their reflection, vertex wedges,
// edge-parallel orders, the A_i edge sets and the grid reduction.
//
// Input coordinates are integers. Polygon vertices may become rational after
// reflection through the centroid, but every direction derived from a polygon
// (edge vectors, cone rays, edge normals) is rescaled to a primitive integer
// vector, so predicates on integer points stay in 64/128-bit integer math.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "coverplex/rational.hpp"

namespace coverplex {

struct Point {
  std::int64_t x = 0;
  std::int64_t y = 0;
  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;
};

struct RationalPoint {
  Rational x;
  Rational y;
  RationalPoint() = default;
  RationalPoint(Rational x_, Rational y_) : x(x_), y(y_) {}
  RationalPoint(const Point& p) : x(p.x), y(p.y) {}  // NOLINT: lossless widening
  friend bool operator==(const RationalPoint&, const RationalPoint&) = default;
  friend RationalPoint operator+(const RationalPoint& a, const RationalPoint& b) { return {a.x + b.x, a.y + b.y}; }
  friend RationalPoint operator-(const RationalPoint& a, const RationalPoint& b) { return {a.x - b.x, a.y - b.y}; }
};

// Integer direction vector.
struct Dir {
  std::int64_t x = 0;
  std::int64_t y = 0;
  friend bool operator==(const Dir&, const Dir&) = default;
  Dir operator-() const { return {-x, -y}; }
};

inline int128 cross(const Dir& a, const Dir& b) { return int128(a.x) * b.y - int128(a.y) * b.x; }
inline int128 dot(const Dir& a, const Dir& b) { return int128(a.x) * b.x + int128(a.y) * b.y; }
inline int128 dot(const Point& p, const Dir& d) { return int128(p.x) * d.x + int128(p.y) * d.y; }
inline Rational dot(const RationalPoint& p, const Dir& d) { return p.x * Rational(d.x) + p.y * Rational(d.y); }
inline Rational cross(const RationalPoint& a, const RationalPoint& b) { return a.x * b.y - a.y * b.x; }
inline Rational cross(const Dir& a, const RationalPoint& b) { return Rational(a.x) * b.y - Rational(a.y) * b.x; }

namespace detail {

inline std::int64_t lcm64(std::int64_t a, std::int64_t b) { return narrow(int128(a) / std::gcd(a, b) * b); }

// Primitive integer vector with the same direction as (dx, dy).
inline Dir primitive_dir(const Rational& dx, const Rational& dy) {
  std::int64_t l = lcm64(dx.den(), dy.den());
  int128 ix = int128(dx.num()) * (l / dx.den());
  int128 iy = int128(dy.num()) * (l / dy.den());
  int128 g = gcd128(ix, iy);
  if (g == 0) throw std::invalid_argument("coverplex: zero-length direction");
  return {narrow(ix / g), narrow(iy / g)};
}

}  // namespace detail

/// A strictly convex polygon with vertices in counterclockwise order.
/// Indices are taken modulo n.
class ConvexPolygon {
 public:
  ConvexPolygon() = default;

  explicit ConvexPolygon(std::vector<RationalPoint> vertices) : v_(std::move(vertices)) { validate(); }

  explicit ConvexPolygon(const std::vector<Point>& vertices) {
    v_.reserve(vertices.size());
    for (const auto& p : vertices) v_.emplace_back(p);
    validate();
  }

  int size() const { return static_cast<int>(v_.size()); }
  const std::vector<RationalPoint>& vertices() const { return v_; }

  int wrap(int i) const {
    int n = size();
    return ((i % n) + n) % n;
  }
  const RationalPoint& vertex(int i) const { return v_[static_cast<size_t>(wrap(i))]; }

  /// Primitive integer direction of edge p_i -> p_{i+1}.
  Dir edge_dir(int i) const { return dir_between(i, i + 1); }
  /// Primitive integer direction of p_j - p_i.
  Dir dir_between(int i, int j) const {
    RationalPoint d = vertex(j) - vertex(i);
    return detail::primitive_dir(d.x, d.y);
  }
  /// Inward normal of edge p_i p_{i+1} (left of the edge for CCW order).
  Dir inward_normal(int i) const {
    Dir e = edge_dir(i);
    return {-e.y, e.x};
  }

  /// Area centroid.
  RationalPoint centroid() const {
    Rational a2 = 0, cx = 0, cy = 0;
    for (int k = 0; k < size(); ++k) {
      const auto& p = vertex(k);
      const auto& q = vertex(k + 1);
      Rational c = cross(p, q);
      a2 += c;
      cx += (p.x + q.x) * c;
      cy += (p.y + q.y) * c;
    }
    Rational three_a2 = a2 * Rational(3);
    return {cx / three_a2, cy / three_a2};
  }

  /// Twice the signed area.
  Rational area2() const {
    Rational a2 = 0;
    for (int k = 0; k < size(); ++k) a2 += cross(vertex(k), vertex(k + 1));
    return a2;
  }

  /// Closed point-in-polygon test.
  bool contains(const RationalPoint& p) const {
    for (int k = 0; k < size(); ++k) {
      if (cross(vertex(k + 1) - vertex(k), p - vertex(k)).sign() < 0) return false;
    }
    return true;
  }

  /// Same polygon re-indexed so the lowest-then-leftmost vertex is p_0.
  ConvexPolygon normalized() const {
    auto it = std::min_element(v_.begin(), v_.end(), [](const RationalPoint& a, const RationalPoint& b) {
      if (a.y != b.y) return a.y < b.y;
      return a.x < b.x;
    });
    std::vector<RationalPoint> out(v_.begin(), v_.end());
    std::rotate(out.begin(), out.begin() + (it - v_.begin()), out.end());
    return ConvexPolygon(std::move(out));
  }

  friend bool operator==(const ConvexPolygon&, const ConvexPolygon&) = default;

 private:
  void validate() const {
    if (v_.size() < 3) throw std::invalid_argument("coverplex: polygon needs at least 3 vertices");
    // Every vertex strictly left of every edge it is not incident to: strict
    // convexity, CCW orientation and no three collinear vertices at once.
    for (int k = 0; k < size(); ++k) {
      RationalPoint e = vertex(k + 1) - vertex(k);
      if (e.x.sign() == 0 && e.y.sign() == 0) throw std::invalid_argument("coverplex: repeated polygon vertex");
      for (int m = 0; m < size(); ++m) {
        if (m == k || m == wrap(k + 1)) continue;
        if (cross(e, vertex(m) - vertex(k)).sign() <= 0)
          throw std::invalid_argument("coverplex: polygon is not strictly convex in counterclockwise order");
      }
    }
  }

  std::vector<RationalPoint> v_;
};

/// Reflection through the centroid O: v -> 2O - v, re-normalized.
inline ConvexPolygon reflect(const ConvexPolygon& poly) {
  RationalPoint o = poly.centroid();
  std::vector<RationalPoint> out;
  out.reserve(static_cast<size_t>(poly.size()));
  // Point reflection preserves orientation, so CCW order is kept.
  for (const auto& v : poly.vertices()) out.emplace_back(o.x * Rational(2) - v.x, o.y * Rational(2) - v.y);
  return ConvexPolygon(std::move(out)).normalized();
}

/// p lies in the translate of `poly` whose centroid sits at `center`.
inline bool translate_contains(const ConvexPolygon& poly, const RationalPoint& center, const RationalPoint& p) {
  RationalPoint o = poly.centroid();
  return poly.contains(p - center + o);
}

// ---------------------------------------------------------------------------
// Wedges

/// The i-wedge with the given apex: apex + s (p_{i-1}-p_i) + t (p_{i+1}-p_i), s,t >= 0.
struct WedgeRef {
  int vertex = 0;
  RationalPoint apex;
};

struct Cone {
  Dir head;  // p_{i-1} - p_i
  Dir tail;  // p_{i+1} - p_i
};

inline Cone cone_at(const ConvexPolygon& poly, int i) { return {poly.dir_between(i, i - 1), poly.dir_between(i, i + 1)}; }

inline bool wedge_contains(const ConvexPolygon& poly, const WedgeRef& w, const RationalPoint& p) {
  Cone c = cone_at(poly, w.vertex);
  RationalPoint v = p - w.apex;
  int s = detail::sign(cross(c.head, c.tail));
  // v = s*head + t*tail with s = cross(v,tail)/cross(head,tail), t = cross(head,v)/cross(head,tail)
  return (cross(c.head, v).sign() * s >= 0) && ((-cross(c.tail, v)).sign() * s >= 0);
}

/// Position of p in the order <_i: its projection on the inward normal of edge p_i p_{i+1}.
inline Rational order_key(const ConvexPolygon& poly, int i, const RationalPoint& p) {
  return dot(p, poly.inward_normal(i));
}
inline std::int64_t order_key(const ConvexPolygon& poly, int i, const Point& p) {
  return detail::narrow(dot(p, poly.inward_normal(i)));
}

/// Edge indices j whose parallel line through p_i meets the polygon only in p_i,
/// i.e. p_i is the unique maximizer of the inward normal of edge j.
inline std::vector<int> compute_A(const ConvexPolygon& poly, int i) {
  std::vector<int> out;
  const int n = poly.size();
  i = poly.wrap(i);
  for (int j = 0; j < n; ++j) {
    Dir nj = poly.inward_normal(j);
    Rational best = dot(poly.vertex(i), nj);
    bool unique = true;
    for (int v = 0; v < n && unique; ++v) {
      if (v == i) continue;
      if (dot(poly.vertex(v), nj) >= best) unique = false;
    }
    if (unique) out.push_back(j);
  }
  return out;
}

namespace detail {

// Open normal cone of vertex i: directions d for which p_i is the unique maximizer of <., d>.
inline Cone normal_cone(const ConvexPolygon& poly, int i) {
  Dir in_prev = poly.inward_normal(i - 1);
  Dir in_next = poly.inward_normal(i);
  return {-in_prev, -in_next};  // outward normals, CCW from first to second
}

inline bool strictly_inside(const Cone& c, const Dir& d) { return cross(c.head, d) > 0 && cross(d, c.tail) > 0; }

}  // namespace detail

/// Whether some direction has p_i as unique maximizer and p_j as unique minimizer.
inline bool antipodal(const ConvexPolygon& poly, int i, int j) {
  if (poly.wrap(i) == poly.wrap(j)) return false;
  Cone a = detail::normal_cone(poly, i);
  Cone b = detail::normal_cone(poly, j);
  b = {-b.head, -b.tail};
  // A nonempty intersection of two open cones narrower than pi is an open cone
  // bounded by two of these rays; their sum lies strictly inside it.
  const Dir rays[4] = {a.head, a.tail, b.head, b.tail};
  for (int p = 0; p < 4; ++p) {
    for (int q = p + 1; q < 4; ++q) {
      Dir d{rays[p].x + rays[q].x, rays[p].y + rays[q].y};
      if (d.x == 0 && d.y == 0) continue;
      if (detail::strictly_inside(a, d) && detail::strictly_inside(b, d)) return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Grid reduction

struct GridSpec {
  Rational cell_side;        // exact rational, never above the geometric bound
  Rational bound_squared;    // square of the geometric bound cell_side approximates from below
  std::int64_t beta = 0;     // upper bound on cells met by one translate
};

namespace detail {

inline Rational point_segment_dist2(const RationalPoint& p, const RationalPoint& a, const RationalPoint& b) {
  RationalPoint ab = b - a;
  RationalPoint ap = p - a;
  Rational len2 = ab.x * ab.x + ab.y * ab.y;
  Rational t = (ap.x * ab.x + ap.y * ab.y) / len2;
  if (t < Rational(0)) t = 0;
  if (t > Rational(1)) t = 1;
  RationalPoint proj{a.x + ab.x * t, a.y + ab.y * t};
  RationalPoint d = p - proj;
  return d.x * d.x + d.y * d.y;
}

inline std::int64_t isqrt(std::int64_t v) {
  if (v <= 0) return 0;
  auto r = static_cast<std::int64_t>(__builtin_sqrt(static_cast<double>(v)));
  while (int128(r) * r > v) --r;
  while (int128(r + 1) * (r + 1) <= v) ++r;
  return r;
}

// Largest rational with denominator `den` whose square does not exceed q.
inline Rational sqrt_lower(const Rational& q, std::int64_t den = 1024) {
  Rational s = q * Rational(den * den);
  std::int64_t root = isqrt(s.floor());
  return Rational(root, den);
}

}  // namespace detail

/// Cell side and overlap bound for translates of `poly`.
///
/// For n >= 4 the side is half the minimum distance between non-consecutive
/// edges. A triangle has no non-consecutive edges; there a cell must not reach
/// all three sides, so the side is half of a lower bound on the inradius
/// (2*area / (3 * longest side)), which keeps the cell diameter below it.
inline GridSpec grid_spec(const ConvexPolygon& poly) {
  const int n = poly.size();
  Rational bound2;
  if (n == 3) {
    Rational a2 = poly.area2();
    Rational longest2 = 0;
    for (int k = 0; k < 3; ++k) {
      RationalPoint e = poly.vertex(k + 1) - poly.vertex(k);
      longest2 = std::max(longest2, e.x * e.x + e.y * e.y);
    }
    // inradius >= area / (1.5 * longest) = a2 / (3 * longest); the cell side is half that
    bound2 = a2 * a2 / (Rational(36) * longest2);
  } else {
    bool first = true;
    for (int e = 0; e < n; ++e) {
      for (int f = e + 2; f < n; ++f) {
        if (poly.wrap(f + 1) == e) continue;  // consecutive through the wrap
        const RationalPoint a0 = poly.vertex(e), a1 = poly.vertex(e + 1);
        const RationalPoint b0 = poly.vertex(f), b1 = poly.vertex(f + 1);
        // Disjoint segments: the minimum is attained at an endpoint.
        Rational d2 = std::min({detail::point_segment_dist2(a0, b0, b1), detail::point_segment_dist2(a1, b0, b1),
                                detail::point_segment_dist2(b0, a0, a1), detail::point_segment_dist2(b1, a0, a1)});
        if (first || d2 < bound2) bound2 = d2;
        first = false;
      }
    }
    bound2 = bound2 / Rational(4);
  }
  GridSpec g;
  g.bound_squared = bound2;
  // Exact when the bound is a perfect rational square, otherwise a lower bound.
  g.cell_side = detail::sqrt_lower(bound2);
  for (std::int64_t den : {1, 2, 3, 4, 6, 8, 12, 16, 24, 32, 64, 128, 256, 512, 1024}) {
    Rational c = detail::sqrt_lower(bound2, den);
    if (c * c == bound2) {
      g.cell_side = c;
      break;
    }
  }
  if (g.cell_side.sign() <= 0) throw std::invalid_argument("coverplex: degenerate polygon for grid reduction");

  Rational minx = poly.vertex(0).x, maxx = minx, miny = poly.vertex(0).y, maxy = miny;
  for (const auto& v : poly.vertices()) {
    minx = std::min(minx, v.x);
    maxx = std::max(maxx, v.x);
    miny = std::min(miny, v.y);
    maxy = std::max(maxy, v.y);
  }
  std::int64_t cw = ((maxx - minx) / g.cell_side).floor() + 2;
  std::int64_t ch = ((maxy - miny) / g.cell_side).floor() + 2;
  g.beta = cw * ch;
  return g;
}

struct CellId {
  std::int64_t cx = 0;
  std::int64_t cy = 0;
  friend bool operator==(const CellId&, const CellId&) = default;
  friend auto operator<=>(const CellId&, const CellId&) = default;
};

/// Half-open cell [a, a+c) x [b, b+c) anchored at the origin.
inline CellId cell_of(const RationalPoint& p, const GridSpec& g) {
  return {(p.x / g.cell_side).floor(), (p.y / g.cell_side).floor()};
}

/// Point indices grouped by cell, in increasing index order within each cell.
inline std::map<CellId, std::vector<size_t>> cell_partition(std::span<const Point> points, const GridSpec& g) {
  std::map<CellId, std::vector<size_t>> cells;
  for (size_t k = 0; k < points.size(); ++k) cells[cell_of(points[k], g)].push_back(k);
  return cells;
}

}  // namespace coverplex
