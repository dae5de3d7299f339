#pragma once

// Lattice polytopes in dimension 1 and 2, exact throughout: convex hull with
// lexicographically ordered vertices, full lattice-point enumeration, and
// rational membership tests (used for coverage probing).

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "syz/intlin.hpp"
#include "syz/rational.hpp"

namespace syz {

using ExponentVector = std::vector<Int>;

struct InvalidInput : std::runtime_error {
  explicit InvalidInput(const std::string& what) : std::runtime_error(what) {}
};

inline std::string exp_to_string(const ExponentVector& a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(a[i]);
  }
  return s + ")";
}

inline ExponentVector parse_exp_key(const std::string& key) {
  ExponentVector out;
  std::size_t i = 0;
  auto skip = [&](char c) {
    if (i >= key.size() || key[i] != c) throw ParseError(i, std::string("expected '") + c + "' in exponent key");
    ++i;
  };
  skip('(');
  while (i < key.size() && key[i] != ')') {
    std::size_t used = 0;
    out.push_back(std::stoll(key.substr(i), &used));
    i += used;
    if (i < key.size() && key[i] == ',') ++i;
  }
  skip(')');
  return out;
}

// Cross product z-component of (b - a) x (c - a).
inline Int cross(const ExponentVector& a, const ExponentVector& b, const ExponentVector& c) {
  return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}

struct LatticePolytope {
  int dim = 0;
  std::vector<ExponentVector> vertices;        // hull-minimal, lex-sorted
  std::vector<ExponentVector> lattice_points;  // every lattice point, lex-sorted
  std::vector<ExponentVector> boundary;        // d = 2 full-dim: ccw vertex cycle
};

namespace detail {

// Andrew monotone chain; collinear points are dropped so vertices are minimal.
inline std::vector<ExponentVector> hull2(std::vector<ExponentVector> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::size_t n = pts.size();
  if (n <= 2) return pts;
  std::vector<ExponentVector> h(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {
    while (k >= lower && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);  // ccw cycle, first point repeated dropped
  return h;
}

}  // namespace detail

// Exact membership of a rational point. Handles full-dim, segment and point
// cases in both supported dimensions.
inline bool polytope_contains(const LatticePolytope& p, const std::vector<Rational>& x) {
  if (static_cast<int>(x.size()) != p.dim) throw std::invalid_argument("polytope_contains: dimension mismatch");
  if (p.dim == 1) {
    return x[0] >= Rational(p.vertices.front()[0]) && x[0] <= Rational(p.vertices.back()[0]);
  }
  if (p.vertices.size() == 1) {
    return x[0] == Rational(p.vertices[0][0]) && x[1] == Rational(p.vertices[0][1]);
  }
  if (p.vertices.size() == 2) {  // degenerate segment in Z^2
    const auto& a = p.vertices[0];
    const auto& b = p.vertices[1];
    Rational cx = (Rational(b[0] - a[0])) * (x[1] - Rational(a[1])) -
                  (Rational(b[1] - a[1])) * (x[0] - Rational(a[0]));
    if (cx != 0) return false;
    Rational t = (Rational(b[0] - a[0])) * (x[0] - Rational(a[0])) +
                 (Rational(b[1] - a[1])) * (x[1] - Rational(a[1]));
    Rational len2 = Rational((b[0] - a[0]) * (b[0] - a[0]) + (b[1] - a[1]) * (b[1] - a[1]));
    return t >= 0 && t <= len2;
  }
  const auto& cyc = p.boundary;
  for (std::size_t i = 0; i < cyc.size(); ++i) {
    const auto& a = cyc[i];
    const auto& b = cyc[(i + 1) % cyc.size()];
    Rational cx = (Rational(b[0] - a[0])) * (x[1] - Rational(a[1])) -
                  (Rational(b[1] - a[1])) * (x[0] - Rational(a[0]));
    if (cx < 0) return false;  // ccw cycle: inside is the left side
  }
  return true;
}

inline LatticePolytope lattice_polytope(int dim, std::vector<ExponentVector> pts) {
  if (pts.empty()) throw InvalidInput("lattice_polytope: empty point set");
  for (const auto& a : pts)
    if (static_cast<int>(a.size()) != dim) throw std::invalid_argument("lattice_polytope: point dimension mismatch");
  LatticePolytope p;
  p.dim = dim;
  if (dim == 1) {
    auto [mn, mx] = std::minmax_element(pts.begin(), pts.end());
    Int lo = (*mn)[0], hi = (*mx)[0];
    p.vertices = lo == hi ? std::vector<ExponentVector>{{lo}} : std::vector<ExponentVector>{{lo}, {hi}};
    for (Int a = lo; a <= hi; ++a) p.lattice_points.push_back({a});
    return p;
  }
  if (dim != 2) throw InvalidInput("lattice_polytope: only dimensions 1 and 2 are supported");
  p.boundary = detail::hull2(pts);
  p.vertices = p.boundary;
  std::sort(p.vertices.begin(), p.vertices.end());
  if (p.vertices.size() <= 2) p.boundary.clear();
  Int x0 = p.vertices[0][0], x1 = x0, y0 = p.vertices[0][1], y1 = y0;
  for (const auto& v : p.vertices) {
    x0 = std::min(x0, v[0]);
    x1 = std::max(x1, v[0]);
    y0 = std::min(y0, v[1]);
    y1 = std::max(y1, v[1]);
  }
  for (Int x = x0; x <= x1; ++x)
    for (Int y = y0; y <= y1; ++y)
      if (polytope_contains(p, {Rational(x), Rational(y)})) p.lattice_points.push_back({x, y});
  return p;
}

// Normalized lattice volume: d! times the Euclidean volume.
inline Int normalized_volume(const LatticePolytope& p) {
  if (p.dim == 1) return p.vertices.back()[0] - p.vertices.front()[0];
  if (p.boundary.empty()) return 0;  // point or degenerate segment
  Int twice_area = 0;
  for (std::size_t i = 0; i < p.boundary.size(); ++i) {
    const auto& a = p.boundary[i];
    const auto& b = p.boundary[(i + 1) % p.boundary.size()];
    twice_area += a[0] * b[1] - b[0] * a[1];
  }
  return std::abs(twice_area);
}

// True when x lies on the topological boundary of p (d = 2 full-dim).
inline bool on_polytope_boundary(const LatticePolytope& p, const std::vector<Rational>& x) {
  if (!polytope_contains(p, x)) return false;
  if (p.boundary.empty()) return true;
  for (std::size_t i = 0; i < p.boundary.size(); ++i) {
    const auto& a = p.boundary[i];
    const auto& b = p.boundary[(i + 1) % p.boundary.size()];
    Rational cx = (Rational(b[0] - a[0])) * (x[1] - Rational(a[1])) -
                  (Rational(b[1] - a[1])) * (x[0] - Rational(a[0]));
    if (cx == 0) return true;
  }
  return false;
}

}  // namespace syz
