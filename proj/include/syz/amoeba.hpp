#pragma once

// Numerical amoebas of plane curves {f = 0} in the 2-torus: pointwise
// membership via torus-angle minimization, a certified raster (a pixel stays
// unmarked only when the term dominance bound proves the zero set misses its
// whole box), complement labeling by dominant monomial, and distances to the
// dual tropical curve used for tube neighborhoods.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <queue>
#include <set>
#include <vector>

#include "syz/laurent.hpp"
#include "syz/subdivision.hpp"

namespace syz {

struct UnresolvedComponents : std::runtime_error {
  explicit UnresolvedComponents(const std::string& what) : std::runtime_error(what) {}
};

struct Box2D {
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  bool empty() const { return !(x0 < x1) || !(y0 < y1); }
};

namespace detail {

struct AmoebaTerm {
  std::array<Int, 2> exp;
  std::complex<double> coeff;
  double log_abs;  // log|coeff|
};

inline std::vector<AmoebaTerm> amoeba_terms(const LaurentPolynomial& f) {
  if (f.dim != 2) throw InvalidInput("amoeba: f must be 2-dimensional");
  if (f.is_zero()) throw InvalidInput("amoeba: f = 0");
  std::vector<AmoebaTerm> out;
  for (const auto& [e, c] : f.terms) {
    std::complex<double> cd = to_complex(c);
    out.push_back({{e[0], e[1]}, cd, std::log(std::abs(cd))});
  }
  return out;
}

// Term moduli at the log-coordinate point p: t_a = |c_a| e^{<a,p>}.
inline std::vector<double> log_term_moduli(const std::vector<AmoebaTerm>& terms,
                                           std::array<double, 2> p) {
  std::vector<double> lt(terms.size());
  for (std::size_t k = 0; k < terms.size(); ++k)
    lt[k] = terms[k].log_abs + terms[k].exp[0] * p[0] + terms[k].exp[1] * p[1];
  return lt;
}

}  // namespace detail

struct TorusMinResult {
  double min_modulus = 0;   // min over angles of |f(e^{p+i theta})| found
  double max_term = 0;      // largest term modulus at p
  std::array<double, 2> theta{0, 0};
};

// Grid search over the angle torus followed by damped Gauss-Newton
// refinement of f = 0 from the best grid samples. Deterministic.
inline TorusMinResult torus_min_modulus(const LaurentPolynomial& f, std::array<double, 2> p,
                                        int grid = 64, int steps = 20) {
  if (grid < 2) throw InvalidInput("torus_min_modulus: grid too small");
  auto terms = detail::amoeba_terms(f);
  std::size_t m = terms.size();
  std::vector<double> lt = detail::log_term_moduli(terms, p);
  double max_term = 0;
  std::vector<std::complex<double>> c(m);  // coefficients scaled to the point p
  for (std::size_t k = 0; k < m; ++k) {
    double t = std::exp(lt[k]);
    max_term = std::max(max_term, t);
    c[k] = terms[k].coeff * (t / std::abs(terms[k].coeff));
  }

  auto value = [&](double t1, double t2) {
    std::complex<double> s = 0;
    for (std::size_t k = 0; k < m; ++k) {
      double ph = terms[k].exp[0] * t1 + terms[k].exp[1] * t2;
      s += c[k] * std::complex<double>(std::cos(ph), std::sin(ph));
    }
    return s;
  };

  const double tau = 2 * M_PI;
  // best few grid samples as refinement seeds
  struct Seed {
    double v;
    double t1, t2;
  };
  std::vector<Seed> seeds;
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      double t1 = tau * i / grid, t2 = tau * j / grid;
      double v = std::abs(value(t1, t2));
      if (seeds.size() < 3) {
        seeds.push_back({v, t1, t2});
        std::sort(seeds.begin(), seeds.end(), [](const Seed& a, const Seed& b) { return a.v < b.v; });
      } else if (v < seeds.back().v) {
        seeds.back() = {v, t1, t2};
        std::sort(seeds.begin(), seeds.end(), [](const Seed& a, const Seed& b) { return a.v < b.v; });
      }
    }

  TorusMinResult best;
  best.max_term = max_term;
  best.min_modulus = seeds.front().v;
  best.theta = {seeds.front().t1, seeds.front().t2};

  for (const Seed& seed : seeds) {
    double t1 = seed.t1, t2 = seed.t2;
    double v = seed.v;
    for (int it = 0; it < steps; ++it) {
      std::complex<double> F = value(t1, t2);
      std::complex<double> d1 = 0, d2 = 0;
      for (std::size_t k = 0; k < m; ++k) {
        double ph = terms[k].exp[0] * t1 + terms[k].exp[1] * t2;
        std::complex<double> e = c[k] * std::complex<double>(std::cos(ph), std::sin(ph));
        d1 += std::complex<double>(0, 1) * double(terms[k].exp[0]) * e;
        d2 += std::complex<double>(0, 1) * double(terms[k].exp[1]) * e;
      }
      // solve [Re d1 Re d2; Im d1 Im d2] (dt1, dt2) = -(Re F, Im F)
      double a = d1.real(), b = d2.real(), cc = d1.imag(), d = d2.imag();
      double det = a * d - b * cc;
      double s1, s2;
      if (std::abs(det) > 1e-14 * (std::abs(a * d) + std::abs(b * cc) + 1e-300)) {
        s1 = (-F.real() * d + F.imag() * b) / det;
        s2 = (-a * F.imag() + cc * F.real()) / det;
      } else {  // fall back to steepest descent on |F|^2
        s1 = -(F.real() * a + F.imag() * cc);
        s2 = -(F.real() * b + F.imag() * d);
        double n = std::hypot(s1, s2);
        if (n < 1e-300) break;
        double scale = std::min(1.0, tau / grid / n);
        s1 *= scale;
        s2 *= scale;
      }
      double lambda = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 12; ++ls) {
        double nv = std::abs(value(t1 + lambda * s1, t2 + lambda * s2));
        if (nv < v) {
          t1 += lambda * s1;
          t2 += lambda * s2;
          v = nv;
          moved = true;
          break;
        }
        lambda /= 2;
      }
      if (!moved) break;
    }
    if (v < best.min_modulus) {
      best.min_modulus = v;
      best.theta = {std::fmod(t1, tau), std::fmod(t2, tau)};
    }
  }
  return best;
}

inline bool amoeba_membership(const LaurentPolynomial& f, std::array<double, 2> p,
                              double tol = 1e-6, int grid = 64, int steps = 20) {
  if (!(tol > 0)) throw InvalidInput("amoeba_membership: tol must be positive");
  TorusMinResult r = torus_min_modulus(f, p, grid, steps);
  return r.min_modulus < tol * r.max_term;
}

struct AmoebaRaster {
  Box2D box;
  int nx = 0, ny = 0;
  double tol = 0;
  std::vector<std::uint8_t> inside;  // pixel (i, j) at j*nx + i

  bool at(int i, int j) const { return inside[static_cast<std::size_t>(j) * nx + i] != 0; }
  double dx() const { return (box.x1 - box.x0) / nx; }
  double dy() const { return (box.y1 - box.y0) / ny; }
  std::array<double, 2> center(int i, int j) const {
    return {box.x0 + (i + 0.5) * dx(), box.y0 + (j + 0.5) * dy()};
  }
};

// A pixel is left unmarked only when one term provably dominates the sum of
// all others over the pixel's whole box (so the box cannot meet the zero
// set); otherwise it is marked. Dominance regions of distinct terms can
// never be edge-adjacent, so flood fill of the unmarked set separates
// complement components correctly at every resolution.
inline AmoebaRaster amoeba_raster(const LaurentPolynomial& f, Box2D box, int resolution,
                                  double tol = 1e-6) {
  if (box.empty()) throw InvalidInput("amoeba_raster: empty box");
  if (resolution < 16) throw InvalidInput("amoeba_raster: resolution must be >= 16");
  if (!(tol > 0 && tol < 1)) throw InvalidInput("amoeba_raster: tol must be in (0, 1)");
  auto terms = detail::amoeba_terms(f);
  std::size_t m = terms.size();
  AmoebaRaster r;
  r.box = box;
  r.nx = r.ny = resolution;
  r.tol = tol;
  r.inside.assign(static_cast<std::size_t>(resolution) * resolution, 0);
  double rx = r.dx() / 2, ry = r.dy() / 2;
  std::vector<double> slack(m);  // max change of log t_a over the pixel box
  for (std::size_t k = 0; k < m; ++k)
    slack[k] = std::abs(terms[k].exp[0]) * rx + std::abs(terms[k].exp[1]) * ry;
  std::vector<double> lt(m);
  for (int j = 0; j < resolution; ++j)
    for (int i = 0; i < resolution; ++i) {
      auto c = r.center(i, j);
      lt = detail::log_term_moduli(terms, c);
      bool lopsided = false;
      for (std::size_t a = 0; a < m && !lopsided; ++a) {
        double lo = lt[a] - slack[a];  // lower bound for t_a on the box
        double rest = 0;               // upper bound for the other terms
        for (std::size_t b = 0; b < m; ++b)
          if (b != a) rest += std::exp(lt[b] + slack[b] - lo);
        lopsided = rest < 1.0 - tol;
      }
      if (!lopsided) r.inside[static_cast<std::size_t>(j) * resolution + i] = 1;
    }
  return r;
}

struct ChamberLabeling {
  std::vector<int> component;  // per pixel: component id, or -1 on marked pixels
  int count = 0;
  std::vector<ExponentVector> labels;                // by component id
  std::vector<std::array<double, 2>> representatives;  // dominance-margin maximizer
  std::vector<bool> unbounded;                       // touches the raster border

  int component_at(const AmoebaRaster& r, int i, int j) const {
    return component[static_cast<std::size_t>(j) * r.nx + i];
  }
};

inline ChamberLabeling chamber_labeling(const AmoebaRaster& r, const LaurentPolynomial& f) {
  auto terms = detail::amoeba_terms(f);
  std::size_t m = terms.size();
  ChamberLabeling L;
  L.component.assign(r.inside.size(), -1);
  auto idx = [&](int i, int j) { return static_cast<std::size_t>(j) * r.nx + i; };
  for (int j = 0; j < r.ny; ++j)
    for (int i = 0; i < r.nx; ++i) {
      if (r.inside[idx(i, j)] || L.component[idx(i, j)] != -1) continue;
      int id = L.count++;
      L.unbounded.push_back(false);
      std::queue<std::pair<int, int>> q;
      q.push({i, j});
      L.component[idx(i, j)] = id;
      double best_margin = -std::numeric_limits<double>::infinity();
      std::array<double, 2> best_point{0, 0};
      std::size_t best_term = 0;
      while (!q.empty()) {
        auto [x, y] = q.front();
        q.pop();
        if (x == 0 || y == 0 || x == r.nx - 1 || y == r.ny - 1) L.unbounded[id] = true;
        auto c = r.center(x, y);
        auto lt = detail::log_term_moduli(terms, c);
        std::size_t top = 0;
        for (std::size_t k = 1; k < m; ++k)
          if (lt[k] > lt[top]) top = k;
        double rest = 0;
        for (std::size_t k = 0; k < m; ++k)
          if (k != top) rest += std::exp(lt[k] - lt[top]);
        double margin = rest > 0 ? -std::log(rest) : std::numeric_limits<double>::infinity();
        if (margin > best_margin) {
          best_margin = margin;
          best_point = c;
          best_term = top;
        }
        const int dx[4] = {1, -1, 0, 0}, dy[4] = {0, 0, 1, -1};
        for (int d = 0; d < 4; ++d) {
          int nx2 = x + dx[d], ny2 = y + dy[d];
          if (nx2 < 0 || ny2 < 0 || nx2 >= r.nx || ny2 >= r.ny) continue;
          if (r.inside[idx(nx2, ny2)] || L.component[idx(nx2, ny2)] != -1) continue;
          L.component[idx(nx2, ny2)] = id;
          q.push({nx2, ny2});
        }
      }
      L.labels.push_back({terms[best_term].exp[0], terms[best_term].exp[1]});
      L.representatives.push_back(best_point);
    }
  auto P = newton_polytope(f);
  if (L.count != static_cast<int>(P.lattice_points.size()))
    throw UnresolvedComponents("chamber_labeling: " + std::to_string(L.count) +
                               " complement components vs " +
                               std::to_string(P.lattice_points.size()) +
                               " lattice points; raise the resolution or enlarge the box");
  std::set<ExponentVector> distinct(L.labels.begin(), L.labels.end());
  if (static_cast<int>(distinct.size()) != L.count)
    throw UnresolvedComponents("chamber_labeling: dominant-monomial labels are not distinct");
  return L;
}

inline double point_segment_distance(std::array<double, 2> a, std::array<double, 2> b,
                                     std::array<double, 2> p) {
  double vx = b[0] - a[0], vy = b[1] - a[1];
  double len2 = vx * vx + vy * vy;
  double t = len2 > 0 ? ((p[0] - a[0]) * vx + (p[1] - a[1]) * vy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p[0] - (a[0] + t * vx), p[1] - (a[1] + t * vy));
}

inline double point_ray_distance(std::array<double, 2> base, std::array<double, 2> dir,
                                 std::array<double, 2> p) {
  double len2 = dir[0] * dir[0] + dir[1] * dir[1];
  double t = std::max(0.0, ((p[0] - base[0]) * dir[0] + (p[1] - base[1]) * dir[1]) / len2);
  return std::hypot(p[0] - (base[0] + t * dir[0]), p[1] - (base[1] + t * dir[1]));
}

// Euclidean distance from p to the tropical 1-complex (bounded edges + legs).
inline double tube_distance(const DualTropicalCurve& curve, std::array<double, 2> p) {
  double best = std::numeric_limits<double>::infinity();
  auto pt = [](const std::array<Rational, 2>& v) -> std::array<double, 2> {
    return {to_double(v[0]), to_double(v[1])};
  };
  for (const auto& v : curve.vertices) {
    auto q = pt(v);
    best = std::min(best, std::hypot(p[0] - q[0], p[1] - q[1]));
  }
  for (const auto& e : curve.bounded_edges)
    best = std::min(best, point_segment_distance(pt(e.from), pt(e.to), p));
  for (const auto& l : curve.legs)
    best = std::min(best,
                    point_ray_distance(pt(l.base), {double(l.dir[0]), double(l.dir[1])}, p));
  return best;
}

}  // namespace syz
