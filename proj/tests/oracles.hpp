#pragma once

// Independent reference implementations the tests compare library output
// against. Everything here is deliberately naive and derived from first
// principles, not from the code under test.

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "syz/subdivision.hpp"

namespace oracle {

// Membership in the amoeba of 1 + z1 + z2: (1, e^x, e^y) are the side
// lengths of a (possibly degenerate) triangle iff some point of the fiber
// torus lands on the zero set.
inline bool triangle_amoeba(double x, double y) {
  double ex = std::exp(x), ey = std::exp(y);
  return ex + ey >= 1 && 1 + ey >= ex && 1 + ex >= ey;
}

// Winding number of a closed polyline around the origin by accumulating
// argument increments; independent of the cut-counting implementation.
inline int loop_winding(const std::vector<std::complex<double>>& loop) {
  double total = 0;
  for (std::size_t k = 0; k + 1 < loop.size(); ++k)
    total += std::arg(loop[k + 1] / loop[k]);
  return static_cast<int>(std::lround(total / (2 * M_PI)));
}

// Twice the signed area of a polygon given by its vertex cycle.
inline syz::Rational shoelace_twice(const std::vector<syz::ExponentVector>& cycle) {
  syz::Rational s = 0;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const auto& a = cycle[i];
    const auto& b = cycle[(i + 1) % cycle.size()];
    s += syz::Rational(a[0]) * syz::Rational(b[1]) - syz::Rational(b[0]) * syz::Rational(a[1]);
  }
  return s;
}

// Definitional lower-hull test: the affine function interpolating the
// lifted cell must lie weakly below every lifted point, with equality
// exactly on the cell's points.
inline bool cell_is_lower_face(const syz::RegularSubdivision& S, int ci) {
  using syz::Rational;
  const auto& cell = S.cells[ci];
  auto hull = syz::cell_vertices(S, ci);
  // affine fit <m, x> + c through the first dim+1 hull vertices
  int d = S.polytope.dim;
  std::vector<Rational> m(d), rhs;
  Rational c;
  if (d == 1) {
    const auto& p = S.points[hull[0]];
    const auto& q = S.points[hull[1]];
    Rational hp = S.heights[hull[0]], hq = S.heights[hull[1]];
    m[0] = (hq - hp) / Rational(q[0] - p[0]);
    c = hp - m[0] * Rational(p[0]);
  } else {
    const auto& p = S.points[hull[0]];
    const auto& q = S.points[hull[1]];
    const auto& r = S.points[hull[2]];
    Rational hp = S.heights[hull[0]];
    // 2x2 system for m against the differences q-p, r-p
    Rational a11(q[0] - p[0]), a12(q[1] - p[1]), b1 = S.heights[hull[1]] - hp;
    Rational a21(r[0] - p[0]), a22(r[1] - p[1]), b2 = S.heights[hull[2]] - hp;
    Rational det = a11 * a22 - a12 * a21;
    if (det == 0) return false;
    m[0] = (b1 * a22 - b2 * a12) / det;
    m[1] = (a11 * b2 - a21 * b1) / det;
    c = hp - m[0] * Rational(p[0]) - m[1] * Rational(p[1]);
  }
  auto fit = [&](const syz::ExponentVector& x) {
    Rational v = c;
    for (int i = 0; i < d; ++i) v += m[i] * Rational(x[i]);
    return v;
  };
  std::set<int> in_cell(cell.begin(), cell.end());
  for (std::size_t i = 0; i < S.points.size(); ++i) {
    Rational gap = S.heights[i] - fit(S.points[i]);
    if (in_cell.count(static_cast<int>(i)) ? gap != 0 : gap <= 0) return false;
  }
  return true;
}

}  // namespace oracle
