#pragma once

// JSON schemas for instances and results.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "coverplex/cover_decomp.hpp"
#include "coverplex/geometry.hpp"
#include "coverplex/level_curve.hpp"
#include "coverplex/planar_cover.hpp"
#include "coverplex/rsc.hpp"

namespace coverplex::io {

using nlohmann::json;

/// Schema violation in otherwise well-formed JSON.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::int64_t integer(const json& j, const char* what) {
  if (!j.is_number_integer()) throw SchemaError(std::string("expected integer for ") + what);
  return j.get<std::int64_t>();
}

inline Rational rational(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const std::exception& e) {
      throw SchemaError(e.what());
    }
  }
  throw SchemaError("expected integer or \"p/q\" string coordinate");
}

}  // namespace detail

inline json point_json(const Point& p) { return json::array({p.x, p.y}); }
inline json point_json(const RationalPoint& p) { return json::array({p.x.str(), p.y.str()}); }

inline Point parse_point(const json& j) {
  if (!j.is_array() || j.size() != 2) throw SchemaError("point must be [x, y]");
  return {detail::integer(j[0], "x"), detail::integer(j[1], "y")};
}

inline std::vector<Point> parse_points(const json& j) {
  if (!j.is_array()) throw SchemaError("expected an array of points");
  std::vector<Point> out;
  for (const auto& p : j) out.push_back(parse_point(p));
  return out;
}

inline json points_json(const std::vector<Point>& pts) {
  json a = json::array();
  for (const auto& p : pts) a.push_back(point_json(p));
  return a;
}

// -- polygon ----------------------------------------------------------------

inline json to_json(const ConvexPolygon& poly) {
  json v = json::array();
  bool integral = true;
  for (const auto& p : poly.vertices()) integral = integral && p.x.is_integer() && p.y.is_integer();
  for (const auto& p : poly.vertices()) {
    if (integral)
      v.push_back(json::array({p.x.num(), p.y.num()}));
    else
      v.push_back(point_json(p));
  }
  return {{"vertices", v}};
}

inline ConvexPolygon parse_polygon(const json& j) {
  const json& v = detail::field(j, "vertices");
  if (!v.is_array()) throw SchemaError("vertices must be an array");
  std::vector<RationalPoint> pts;
  for (const auto& p : v) {
    if (!p.is_array() || p.size() != 2) throw SchemaError("vertex must be [x, y]");
    pts.emplace_back(detail::rational(p[0]), detail::rational(p[1]));
  }
  try {
    return ConvexPolygon(std::move(pts));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
}

// -- restricted strip cover -------------------------------------------------

inline json to_json(const rsc::Instance& inst) {
  json s = json::array();
  for (const auto& x : inst.sensors) s.push_back({{"id", x.id}, {"l", x.l}, {"r", x.r}, {"d", x.d}});
  return {{"m", inst.m}, {"sensors", s}};
}

inline rsc::Instance parse_rsc_instance(const json& j) {
  rsc::Instance inst;
  inst.m = static_cast<int>(detail::integer(detail::field(j, "m"), "m"));
  const json& s = detail::field(j, "sensors");
  if (!s.is_array()) throw SchemaError("sensors must be an array");
  for (const auto& x : s) {
    inst.sensors.push_back({detail::integer(detail::field(x, "id"), "id"),
                            static_cast<int>(detail::integer(detail::field(x, "l"), "l")),
                            static_cast<int>(detail::integer(detail::field(x, "r"), "r")),
                            detail::integer(detail::field(x, "d"), "d")});
  }
  try {
    inst.validate();
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
  return inst;
}

inline json to_json(const rsc::Schedule& s, std::int64_t M, std::int64_t L) {
  json a = json::array();
  for (const auto& x : s.assignments) a.push_back({{"id", x.id}, {"t", x.t}});
  return {{"assignments", a}, {"M", M}, {"L", L}};
}

inline rsc::Schedule parse_schedule(const json& j) {
  rsc::Schedule s;
  const json& a = detail::field(j, "assignments");
  if (!a.is_array()) throw SchemaError("assignments must be an array");
  for (const auto& x : a)
    s.assignments.push_back({detail::integer(detail::field(x, "id"), "id"), detail::integer(detail::field(x, "t"), "t")});
  return s;
}

// -- decomposition ------------------------------------------------------------

struct DecompositionInstance {
  ConvexPolygon polygon;
  std::vector<Point> points;
  std::int64_t k = 1;
  friend bool operator==(const DecompositionInstance&, const DecompositionInstance&) = default;
};

inline json to_json(const DecompositionInstance& d) {
  return {{"polygon", to_json(d.polygon)}, {"points", points_json(d.points)}, {"k", d.k}};
}

inline DecompositionInstance parse_decomposition_instance(const json& j) {
  DecompositionInstance d;
  d.polygon = parse_polygon(detail::field(j, "polygon"));
  d.points = parse_points(detail::field(j, "points"));
  d.k = detail::integer(detail::field(j, "k"), "k");
  if (d.k < 1) throw SchemaError("k must be at least 1");
  return d;
}

inline json to_json(const IterationRecord& r) {
  json j = {{"i", r.vertex},
            {"curve_empty", r.curve_empty},
            {"L", r.load_defined ? json(r.L) : json()},
            {"t", r.t},
            {"reserve", r.reserve},
            {"candidates", r.candidates},
            {"colored", r.colored},
            {"min_candidate_load", r.min_candidate_load},
            {"max_colored_load", r.max_colored_load}};
  j["later_min_load"] = r.later_min_load ? json(*r.later_min_load) : json();
  return j;
}

inline json colors_json(const std::vector<int>& colors) {
  json c = json::array();
  for (int x : colors) c.push_back(x == 0 ? json() : json(x));
  return c;
}

inline json to_json(const Decomposition& d) {
  json trace = json::array();
  for (const auto& r : d.trace) trace.push_back(to_json(r));
  return {{"colors", colors_json(d.colors.color)}, {"T", d.colors.T}, {"trace", trace}};
}

struct ColoringResult {
  std::vector<int> colors;
  int T = 0;
};

inline ColoringResult parse_coloring(const json& j) {
  ColoringResult out;
  out.T = static_cast<int>(detail::integer(detail::field(j, "T"), "T"));
  const json& c = detail::field(j, "colors");
  if (!c.is_array()) throw SchemaError("colors must be an array");
  for (const auto& x : c) out.colors.push_back(x.is_null() ? 0 : static_cast<int>(detail::integer(x, "color")));
  return out;
}

inline json to_json(const TranslateDecomposition& d) {
  json classes = json::array();
  for (const auto& c : d.classes) classes.push_back(c);
  return {{"classes", classes},
          {"T", d.T},
          {"k_cell", d.k_cell},
          {"beta", d.grid.beta},
          {"cell_side", d.grid.cell_side.str()}};
}

// -- level curves -------------------------------------------------------------

inline json to_json(const LevelCurve& c, const WedgeFrame& f) {
  json chain = json::array();
  for (const auto& p : curve_chain(c, f)) chain.push_back(point_json(p));
  json out = {{"i", c.vertex}, {"r", c.level}, {"chain", chain}};
  out["head"] = c.empty() ? json() : point_json(f.apex_point(c.head()));
  out["tail"] = c.empty() ? json() : point_json(f.apex_point(c.tail()));
  return out;
}

// -- planar -------------------------------------------------------------------

inline json to_json(const PlanarInstance& p) {
  json s = json::array();
  for (const auto& x : p.sensors) s.push_back({{"id", x.id}, {"center", point_json(x.center)}, {"d", x.d}});
  return {{"polygon", to_json(p.polygon)}, {"sensors", s}, {"universe", points_json(p.universe)}};
}

inline PlanarInstance parse_planar_instance(const json& j) {
  PlanarInstance p;
  p.polygon = parse_polygon(detail::field(j, "polygon"));
  const json& s = detail::field(j, "sensors");
  if (!s.is_array()) throw SchemaError("sensors must be an array");
  for (const auto& x : s)
    p.sensors.push_back({detail::integer(detail::field(x, "id"), "id"), parse_point(detail::field(x, "center")),
                         detail::integer(detail::field(x, "d"), "d")});
  p.universe = parse_points(detail::field(j, "universe"));
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
  return p;
}

}  // namespace coverplex::io
