#pragma once

// Minimal SVG figure writer. Coordinates are emitted at fixed precision so
// figures are byte-stable; the viewBox is derived from the base bounding
// box. Every figure has a JSON twin, so SVGs carry no data of their own.

#include <cstdio>
#include <sstream>
#include <string>

#include "syz/amoeba.hpp"
#include "syz/fibration.hpp"
#include "syz/subdivision.hpp"

namespace syz {

namespace detail {

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

// Maps math coordinates (y up) into SVG user units (y down).
struct SvgCanvas {
  double x0, y0, x1, y1;  // math-coordinate viewport
  double scale;
  std::ostringstream body;

  SvgCanvas(double ax0, double ay0, double ax1, double ay1, double s = 64)
      : x0(ax0), y0(ay0), x1(ax1), y1(ay1), scale(s) {}

  double X(double x) const { return (x - x0) * scale; }
  double Y(double y) const { return (y1 - y) * scale; }

  void line(double ax, double ay, double bx, double by, const std::string& style) {
    body << "<line x1=\"" << fmt(X(ax)) << "\" y1=\"" << fmt(Y(ay)) << "\" x2=\"" << fmt(X(bx))
         << "\" y2=\"" << fmt(Y(by)) << "\" " << style << "/>\n";
  }
  void circle(double cx, double cy, double r, const std::string& style) {
    body << "<circle cx=\"" << fmt(X(cx)) << "\" cy=\"" << fmt(Y(cy)) << "\" r=\"" << fmt(r)
         << "\" " << style << "/>\n";
  }
  void rect(double ax, double ay, double w, double h, const std::string& style) {
    body << "<rect x=\"" << fmt(X(ax)) << "\" y=\"" << fmt(Y(ay + h)) << "\" width=\""
         << fmt(w * scale) << "\" height=\"" << fmt(h * scale) << "\" " << style << "/>\n";
  }
  void text(double ax, double ay, const std::string& s, const std::string& style) {
    body << "<text x=\"" << fmt(X(ax)) << "\" y=\"" << fmt(Y(ay)) << "\" " << style << ">" << s
         << "</text>\n";
  }

  std::string finish() const {
    std::ostringstream out;
    double w = (x1 - x0) * scale, h = (y1 - y0) * scale;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << fmt(w) << " " << fmt(h)
        << "\" width=\"" << fmt(w) << "\" height=\"" << fmt(h) << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << body.str() << "</svg>\n";
    return out.str();
  }
};

inline void draw_dual_curve(SvgCanvas& c, const DualTropicalCurve& curve) {
  const std::string edge_style = "stroke=\"#c0392b\" stroke-width=\"2\"";
  for (const auto& e : curve.bounded_edges)
    c.line(to_double(e.from[0]), to_double(e.from[1]), to_double(e.to[0]), to_double(e.to[1]),
           edge_style);
  double reach = 2 * std::max(c.x1 - c.x0, c.y1 - c.y0);
  for (const auto& l : curve.legs) {
    double bx = to_double(l.base[0]), by = to_double(l.base[1]);
    double n = std::hypot(static_cast<double>(l.dir[0]), static_cast<double>(l.dir[1]));
    c.line(bx, by, bx + l.dir[0] / n * reach, by + l.dir[1] / n * reach, edge_style);
  }
  for (const auto& v : curve.vertices)
    c.circle(to_double(v[0]), to_double(v[1]), 4, "fill=\"#c0392b\"");
}

}  // namespace detail

// The lifted subdivision of the Newton polytope with the dual tropical
// curve (2d inputs only) overlaid in the same plane.
inline std::string svg_subdivision(const RegularSubdivision& S,
                                   const DualTropicalCurve* curve = nullptr) {
  auto coord = [](const ExponentVector& p, std::size_t k) {
    return k < p.size() ? static_cast<double>(p[k]) : 0.0;
  };
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  auto grow = [&](double x, double y) {
    x0 = std::min(x0, x);
    y0 = std::min(y0, y);
    x1 = std::max(x1, x);
    y1 = std::max(y1, y);
  };
  for (const auto& p : S.points) grow(coord(p, 0), coord(p, 1));
  if (curve)
    for (const auto& v : curve->vertices) grow(to_double(v[0]), to_double(v[1]));
  detail::SvgCanvas c(x0 - 1, y0 - 1, x1 + 1, y1 + 1);
  if (curve) detail::draw_dual_curve(c, *curve);
  for (std::size_t ci = 0; ci < S.cells.size(); ++ci) {
    auto hull = cell_vertices(S, static_cast<int>(ci));
    for (std::size_t i = 0; i + 1 <= hull.size(); ++i) {
      const auto& a = S.points[hull[i]];
      const auto& b = S.points[hull[(i + 1) % hull.size()]];
      if (hull.size() == 2 && i == 1) break;  // segment cells: one edge only
      c.line(coord(a, 0), coord(a, 1), coord(b, 0), coord(b, 1),
             "stroke=\"#2c3e50\" stroke-width=\"1.5\"");
    }
  }
  for (const auto& p : S.points)
    c.circle(coord(p, 0), coord(p, 1), 3, "fill=\"#2c3e50\"");
  return c.finish();
}

// The 2d base: the wall positions on the log-radius line with chamber labels.
inline std::string svg_base_2d(const SYZBase2D& base) {
  double lo = -1, hi = 1;
  for (double w : base.walls) {
    lo = std::min(lo, w - 1);
    hi = std::max(hi, w + 1);
  }
  detail::SvgCanvas c(lo, -0.75, hi, 0.75, 96);
  c.line(lo, 0, hi, 0, "stroke=\"#2c3e50\" stroke-width=\"2\"");
  for (double w : base.walls) {
    c.line(w, -0.12, w, 0.12, "stroke=\"#c0392b\" stroke-width=\"2\"");
    c.text(w, -0.3, detail::fmt(w), "font-size=\"13\" text-anchor=\"middle\" fill=\"#c0392b\"");
  }
  for (const auto& ch : base.chambers) {
    double a = std::isinf(ch.lo) ? lo : ch.lo;
    double b = std::isinf(ch.hi) ? hi : ch.hi;
    c.text((a + b) / 2, 0.25, ch.name, "font-size=\"14\" text-anchor=\"middle\" fill=\"#2c3e50\"");
  }
  return c.finish();
}

// The amoeba raster with chamber labels and the dual tropical curve (the
// spine's tropical limit) overlaid.
inline std::string svg_amoeba(const AmoebaRaster& r, const ChamberLabeling* lab,
                              const DualTropicalCurve* curve) {
  detail::SvgCanvas c(r.box.x0, r.box.y0, r.box.x1, r.box.y1,
                      512.0 / std::max(r.box.x1 - r.box.x0, r.box.y1 - r.box.y0));
  // merge horizontal runs of amoeba pixels into single rects
  for (int j = 0; j < r.ny; ++j) {
    int i = 0;
    while (i < r.nx) {
      if (!r.at(i, j)) {
        ++i;
        continue;
      }
      int start = i;
      while (i < r.nx && r.at(i, j)) ++i;
      c.rect(r.box.x0 + start * r.dx(), r.box.y0 + j * r.dy(), (i - start) * r.dx(), r.dy(),
             "fill=\"#74a4bc\"");
    }
  }
  if (curve) detail::draw_dual_curve(c, *curve);
  if (lab)
    for (int k = 0; k < lab->count; ++k)
      c.text(lab->representatives[k][0], lab->representatives[k][1], exp_to_string(lab->labels[k]),
             "font-size=\"16\" text-anchor=\"middle\" fill=\"#1a252f\"");
  return c.finish();
}

}  // namespace syz
