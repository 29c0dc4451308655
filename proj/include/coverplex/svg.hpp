#pragma once

// Static SVG figures: a level curve over its point set, a colored point set,
// and a strip-cover schedule drawn as vertically placed rectangles.
// Output is self-contained and byte-stable for identical input.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "coverplex/geometry.hpp"
#include "coverplex/level_curve.hpp"
#include "coverplex/rsc.hpp"

namespace coverplex::svg {

namespace detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline const char* palette(int c) {
  static const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                 "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  if (c <= 0) return "#cccccc";
  return colors[(c - 1) % 10];
}

// Maps a data box onto a square canvas with y pointing up.
class Frame {
 public:
  Frame(double minx, double miny, double maxx, double maxy, double size = 600.0, double margin = 20.0)
      : minx_(minx), miny_(miny), size_(size), margin_(margin) {
    double span = std::max({maxx - minx, maxy - miny, 1e-9});
    scale_ = (size - 2 * margin) / span;
  }
  double x(double v) const { return margin_ + (v - minx_) * scale_; }
  double y(double v) const { return size_ - margin_ - (v - miny_) * scale_; }
  double size() const { return size_; }

 private:
  double minx_, miny_, size_, margin_, scale_ = 1;
};

inline std::string header(double w, double h) {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w) << "\" height=\"" << num(h)
     << "\" viewBox=\"0 0 " << num(w) << " " << num(h) << "\">\n"
     << "<rect x=\"0\" y=\"0\" width=\"" << num(w) << "\" height=\"" << num(h) << "\" fill=\"white\"/>\n";
  return os.str();
}

template <class It, class Get>
Frame fit(It begin, It end, Get get) {
  double minx = 0, miny = 0, maxx = 1, maxy = 1;
  bool first = true;
  for (It it = begin; it != end; ++it) {
    auto [px, py] = get(*it);
    if (first) {
      minx = maxx = px;
      miny = maxy = py;
      first = false;
    }
    minx = std::min(minx, px);
    maxx = std::max(maxx, px);
    miny = std::min(miny, py);
    maxy = std::max(maxy, py);
  }
  double pad = 0.1 * std::max(maxx - minx, maxy - miny) + 1.0;
  return Frame(minx - pad, miny - pad, maxx + pad, maxy + pad);
}

}  // namespace detail

/// Points, the staircase chain of a level curve, and its head and tail rays.
inline std::string plot_curve(std::span<const Point> pts, const LevelCurve& curve, const WedgeFrame& frame) {
  std::vector<std::pair<double, double>> all;
  for (const auto& p : pts) all.push_back({double(p.x), double(p.y)});
  auto chain = curve_chain(curve, frame);
  for (const auto& c : chain) all.push_back({c.x.to_double(), c.y.to_double()});
  auto f = detail::fit(all.begin(), all.end(), [](const auto& q) { return q; });
  std::ostringstream os;
  os << detail::header(f.size(), f.size());
  if (!chain.empty()) {
    // rays leave the chain ends along the cone sides, away from the wedge
    const Cone& cone = frame.cone();
    double len = f.size();
    auto ray = [&](const RationalPoint& from, const Dir& d) {
      double nx = -double(d.x), ny = -double(d.y);
      double norm = std::max(1e-9, std::hypot(nx, ny));
      os << "<line x1=\"" << detail::num(f.x(from.x.to_double())) << "\" y1=\"" << detail::num(f.y(from.y.to_double()))
         << "\" x2=\"" << detail::num(f.x(from.x.to_double()) + len * nx / norm) << "\" y2=\""
         << detail::num(f.y(from.y.to_double()) - len * ny / norm)
         << "\" stroke=\"#d62728\" stroke-width=\"2\" stroke-dasharray=\"6,4\"/>\n";
    };
    ray(chain.front(), cone.head);
    ray(chain.back(), cone.tail);
    os << "<polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\" points=\"";
    for (size_t k = 0; k < chain.size(); ++k) {
      if (k) os << ' ';
      os << detail::num(f.x(chain[k].x.to_double())) << ',' << detail::num(f.y(chain[k].y.to_double()));
    }
    os << "\"/>\n";
  }
  for (const auto& p : pts)
    os << "<circle cx=\"" << detail::num(f.x(double(p.x))) << "\" cy=\"" << detail::num(f.y(double(p.y)))
       << "\" r=\"3\" fill=\"#1f77b4\"/>\n";
  os << "<text x=\"10\" y=\"16\" font-family=\"monospace\" font-size=\"12\">C_" << curve.vertex << "(" << curve.level
     << ")</text>\n</svg>\n";
  return os.str();
}

/// Points filled by color; uncolored points are grey.
inline std::string plot_coloring(std::span<const Point> pts, std::span<const int> colors) {
  auto f = detail::fit(pts.begin(), pts.end(), [](const Point& p) { return std::pair<double, double>(p.x, p.y); });
  std::ostringstream os;
  os << detail::header(f.size(), f.size());
  for (size_t k = 0; k < pts.size(); ++k) {
    int c = k < colors.size() ? colors[k] : 0;
    os << "<circle cx=\"" << detail::num(f.x(double(pts[k].x))) << "\" cy=\"" << detail::num(f.y(double(pts[k].y)))
       << "\" r=\"3.5\" fill=\"" << detail::palette(c) << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

/// Each assigned sensor is a rectangle spanning its range horizontally and its
/// active times vertically.
inline std::string plot_schedule(const rsc::Instance& inst, const rsc::Schedule& sched) {
  std::map<std::int64_t, const rsc::Sensor*> by_id;
  for (const auto& s : inst.sensors) by_id[s.id] = &s;
  std::int64_t horizon = 1;
  for (const auto& a : sched.assignments)
    if (by_id.count(a.id)) horizon = std::max(horizon, a.t + by_id[a.id]->d - 1);
  const double cell_w = 600.0 / std::max(1, inst.m);
  const double cell_h = std::min(24.0, 600.0 / double(horizon));
  const double width = 40.0 + cell_w * inst.m + 20.0;
  const double height = 40.0 + cell_h * double(horizon) + 30.0;
  std::ostringstream os;
  os << detail::header(width, height);
  auto xpos = [&](double x) { return 40.0 + (x - 1.0) * cell_w; };
  auto ypos = [&](double t) { return height - 30.0 - (t - 1.0) * cell_h; };
  os << "<line x1=\"" << detail::num(xpos(1)) << "\" y1=\"" << detail::num(ypos(1)) << "\" x2=\""
     << detail::num(xpos(inst.m + 1)) << "\" y2=\"" << detail::num(ypos(1)) << "\" stroke=\"black\"/>\n";
  int k = 0;
  for (const auto& a : sched.assignments) {
    auto it = by_id.find(a.id);
    if (it == by_id.end()) continue;
    const rsc::Sensor& s = *it->second;
    double x0 = xpos(s.l), x1 = xpos(s.r + 1.0);
    double y_top = ypos(double(a.t + s.d)), y_bot = ypos(double(a.t));
    os << "<rect x=\"" << detail::num(x0 + 1) << "\" y=\"" << detail::num(y_top + 1) << "\" width=\""
       << detail::num(x1 - x0 - 2) << "\" height=\"" << detail::num(y_bot - y_top - 2) << "\" fill=\""
       << detail::palette(++k) << "\" fill-opacity=\"0.45\" stroke=\"black\" stroke-width=\"0.8\"><title>sensor "
       << s.id << " t=" << a.t << " d=" << s.d << "</title></rect>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace coverplex::svg
