#pragma once

// SYZ transforms. Semi-flat: sections as connection coefficient fields and
// the finite-difference (0,2)-curvature residual deciding the Lagrangian
// criterion. 2d: admissible paths, winding and intersection numbers, wall
// values, and the Cech bundle with transitions (1+w)^{-(xi(s_{i+1})-xi(s_i))}
// whose degree equals the path's intersection number. 3d: tropical sections
// with the integrality gate and the edge-chart cocycle.

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "syz/fibration.hpp"
#include "syz/gluing.hpp"

namespace syz {

struct GridSpec {
  std::vector<double> lo, hi;
  std::vector<int> n;  // nodes per axis, each >= 2

  int dim() const { return static_cast<int>(n.size()); }
  long total() const {
    long t = 1;
    for (int k : n) t *= k;
    return t;
  }
  std::vector<double> node(long flat) const {
    std::vector<double> x(n.size());
    for (int a = dim() - 1; a >= 0; --a) {
      long i = flat % n[a];
      flat /= n[a];
      x[a] = lo[a] + (hi[a] - lo[a]) * static_cast<double>(i) / (n[a] - 1);
    }
    return x;
  }
};

inline GridSpec uniform_grid(int dim, double lo, double hi, int nodes) {
  GridSpec g;
  g.lo.assign(dim, lo);
  g.hi.assign(dim, hi);
  g.n.assign(dim, nodes);
  return g;
}

// A section of the torus fibration, given by its evaluator on the base.
struct NumericSection {
  int dim = 0;
  std::function<std::vector<double>(const std::vector<double>&)> xi;
  GridSpec grid;
};

struct SampledField {
  GridSpec grid;
  std::vector<std::vector<double>> values;  // xi at each grid node, row-major
};

// The section as the fiberwise flat-connection coefficient field:
// the connection is d + 2 pi i sum_j xi_j(x) dy_j in base/fiber coordinates.
inline SampledField semiflat_connection(const NumericSection& s) {
  SampledField field;
  field.grid = s.grid;
  for (long k = 0; k < s.grid.total(); ++k) {
    auto v = s.xi(s.grid.node(k));
    if (static_cast<int>(v.size()) != s.dim)
      throw InvalidInput("semiflat_connection: evaluator arity mismatch");
    for (double c : v)
      if (!std::isfinite(c)) throw InvalidInput("semiflat_connection: non-finite value");
    field.values.push_back(std::move(v));
  }
  return field;
}

// Max over the grid of the largest entry of J - J^T, where J is the central
// finite-difference Jacobian of xi at step h. This is, up to a constant, the
// norm of the (0,2)-part of the curvature of the transformed connection; it
// vanishes exactly when the section is Lagrangian.
inline double curvature02_residual(const NumericSection& s, const GridSpec& grid, double h) {
  if (!(h > 0)) throw InvalidInput("curvature02_residual: step must be positive");
  int d = s.dim;
  std::vector<std::vector<double>> plus(d), minus(d);
  double residual = 0;
  for (long k = 0; k < grid.total(); ++k) {
    std::vector<double> x = grid.node(k);
    for (int j = 0; j < d; ++j) {
      x[j] += h;
      plus[j] = s.xi(x);
      x[j] -= 2 * h;
      minus[j] = s.xi(x);
      x[j] += h;
      if (static_cast<int>(plus[j].size()) != d || static_cast<int>(minus[j].size()) != d)
        throw InvalidInput("curvature02_residual: evaluator arity mismatch");
    }
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) {
        double jij = (plus[j][i] - minus[j][i]) / (2 * h);
        double jji = (plus[i][j] - minus[i][j]) / (2 * h);
        if (!std::isfinite(jij) || !std::isfinite(jji))
          throw InvalidInput("curvature02_residual: non-finite evaluation");
        residual = std::max(residual, std::abs(jij - jji));
      }
  }
  return residual;
}

inline double curvature02_residual(const NumericSection& s, double h) {
  return curvature02_residual(s, s.grid, h);
}

namespace detail {

// Signed crossings of the open real-axis interval (x_lo, x_hi) by a segment
// chain; +1 when passing from the lower to the upper half-plane. Vertices
// exactly on the counted interval, or crossings exactly at its endpoints,
// are degenerate.
inline int signed_crossings(const std::vector<std::complex<double>>& pts, double x_lo,
                            double x_hi) {
  int total = 0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    std::complex<double> p = pts[k], q = pts[k + 1];
    bool below_p = p.imag() < 0, below_q = q.imag() < 0;
    if (below_p == below_q) continue;  // no sign change (on-axis treated as upper)
    double x;
    if (p.imag() == 0)
      x = p.real();
    else if (q.imag() == 0)
      x = q.real();
    else
      x = p.real() + (q.real() - p.real()) * (-p.imag()) / (q.imag() - p.imag());
    if (x <= x_lo || x >= x_hi) {
      if (x == x_lo || x == x_hi)
        throw InvalidInput("signed crossing exactly at an interval endpoint");
      continue;
    }
    if (p.imag() == 0 || q.imag() == 0)
      throw InvalidInput("path vertex lies on the counted interval");
    total += below_p ? 1 : -1;
  }
  return total;
}

}  // namespace detail

// Winding number measured by signed crossings of the negative real axis.
// A counter-clockwise pass crosses it from the upper to the lower
// half-plane and counts +1.
inline int winding_degree(const std::vector<std::complex<double>>& polyline) {
  for (const auto& v : polyline)
    if (v.imag() == 0 && v.real() <= 0)
      throw InvalidInput("winding_degree: vertex on the negative real axis");
  return -detail::signed_crossings(polyline, -std::numeric_limits<double>::infinity(), 0.0);
}

// A piecewise-linear admissible path in C^*, with asymptotic ray markers at
// both ends and the real cut segment [a, b] joining the root positions.
struct AdmissiblePath2D {
  std::vector<std::complex<double>> vertices;
  double cut_a = 0, cut_b = 0;
  std::complex<double> start_dir{0, 0};  // asymptotic direction into the first vertex
  std::complex<double> end_dir{0, 0};    // asymptotic direction out of the last vertex
};

namespace detail {

// The path polyline with the asymptotic ends materialized as long segments.
inline std::vector<std::complex<double>> with_ray_markers(const AdmissiblePath2D& g) {
  if (g.vertices.empty()) throw InvalidInput("admissible path: no vertices");
  std::vector<std::complex<double>> pts;
  double reach = std::abs(g.cut_a) + std::abs(g.cut_b) + 1.0;
  for (const auto& v : g.vertices) reach = std::max(reach, std::abs(v));
  reach *= 16;
  if (g.start_dir != std::complex<double>(0, 0))
    pts.push_back(g.vertices.front() + g.start_dir / std::abs(g.start_dir) * reach);
  pts.insert(pts.end(), g.vertices.begin(), g.vertices.end());
  if (g.end_dir != std::complex<double>(0, 0))
    pts.push_back(g.vertices.back() + g.end_dir / std::abs(g.end_dir) * reach);
  return pts;
}

}  // namespace detail

// Signed transversal intersection count of the path with the cut segment
// [a, b]; an upward crossing counts +1.
inline int intersection_number_2d(const AdmissiblePath2D& g) {
  if (!(g.cut_a < g.cut_b)) throw InvalidInput("intersection_number_2d: cut segment is empty");
  auto pts = detail::with_ray_markers(g);
  try {
    return detail::signed_crossings(pts, g.cut_a, g.cut_b);
  } catch (const InvalidInput& e) {
    throw InvalidInput(std::string("intersection_number_2d: tangential or endpoint intersection (") +
                       e.what() + ")");
  }
}

// The section's integer fiber coordinate at each wall: xi(s_i) = signed
// crossings of the real segment (0, r_i), r_i the wall's root position.
// Differences of consecutive wall values then count crossings of (r_i,
// r_{i+1}) exactly, which makes the degree identity an integer identity.
inline std::vector<Int> wall_values_from_path(const AdmissiblePath2D& g,
                                              const std::vector<double>& root_positions) {
  auto pts = detail::with_ray_markers(g);
  std::vector<Int> xi;
  for (double r : root_positions) {
    if (!(r > 0)) throw InvalidInput("wall_values_from_path: root positions must be positive");
    xi.push_back(detail::signed_crossings(pts, 0.0, r));
  }
  return xi;
}

struct MirrorLineBundle {
  CechLineBundle bundle;
  std::optional<Int> degree;  // 2d with two walls: degree on the exceptional curve

  bool structure_sheaf() const {
    for (const auto& [key, t] : bundle.transitions)
      if (!t.is_one()) return false;
    return true;
  }
};

// Cech bundle on the double-chamber cover {U_{i-1,i}} of the 2d base, with
// transition U_{i-1,i} -> U_{i,i+1} equal to (1+w)^{-(xi(s_{i+1})-xi(s_i))}.
inline MirrorLineBundle syz_transform_2d(const std::vector<Int>& wall_values,
                                         const SYZBase2D& base) {
  std::size_t k = base.walls.size();
  if (wall_values.size() != k)
    throw InvalidInput("syz_transform_2d: " + std::to_string(wall_values.size()) +
                       " wall values for " + std::to_string(k) + " walls");
  MirrorLineBundle out;
  if (k == 0) {
    out.bundle.charts.push_back("U0");
    return out;
  }
  for (std::size_t i = 0; i + 1 <= k; ++i)
    out.bundle.charts.push_back("U(" + std::to_string(i) + "," + std::to_string(i + 1) + ")");
  for (std::size_t i = 0; i + 1 < k; ++i) {
    out.bundle.overlaps.insert({static_cast<int>(i), static_cast<int>(i + 1)});
    GluingUnit t = unit_one(1);
    t.opw_exp = -(wall_values[i + 1] - wall_values[i]);
    out.bundle.transitions[{static_cast<int>(i), static_cast<int>(i + 1)}] = t;
  }
  std::string why;
  if (!out.bundle.verify(&why)) throw std::logic_error("syz_transform_2d: " + why);
  if (k == 2) out.degree = wall_values[1] - wall_values[0];
  return out;
}

// Tropical section data: one integer n_{alpha beta} = <dg, beta - alpha>
// per dual-curve edge or leg. Entries are kept rational so that the
// integrality gate can reject rather than silently round.
struct TropicalSection3D {
  struct Entry {
    ExponentVector alpha, beta;
    Rational n;
  };
  std::vector<Entry> entries;
  std::optional<std::array<Rational, 2>> dg;  // when derived from a constant gradient
};

inline TropicalSection3D section_from_gradient(const std::array<Rational, 2>& dg,
                                               const DualTropicalCurve& curve) {
  TropicalSection3D s;
  s.dg = dg;
  std::set<std::pair<ExponentVector, ExponentVector>> seen;
  auto add = [&](ExponentVector a, ExponentVector b) {
    if (b < a) std::swap(a, b);
    if (!seen.insert({a, b}).second) return;
    Rational n = dg[0] * Rational(b[0] - a[0]) + dg[1] * Rational(b[1] - a[1]);
    s.entries.push_back({a, b, n});
  };
  for (const auto& e : curve.bounded_edges) add(e.alpha, e.beta);
  for (const auto& l : curve.legs) add(l.alpha, l.beta);
  return s;
}

inline TropicalSection3D section_sum(const TropicalSection3D& a, const TropicalSection3D& b) {
  std::map<std::pair<ExponentVector, ExponentVector>, Rational> acc;
  for (const auto& e : a.entries) acc[{e.alpha, e.beta}] += e.n;
  for (const auto& e : b.entries) acc[{e.alpha, e.beta}] += e.n;
  TropicalSection3D s;
  for (const auto& [key, n] : acc) s.entries.push_back({key.first, key.second, n});
  return s;
}

namespace detail {

// Normalized lookup table: key (alpha, beta) with alpha < beta lex, value
// n(alpha -> beta). Orientation-reversed duplicates must negate.
inline std::map<std::pair<ExponentVector, ExponentVector>, Rational> section_table(
    const TropicalSection3D& s, std::string* why) {
  std::map<std::pair<ExponentVector, ExponentVector>, Rational> table;
  for (const auto& e : s.entries) {
    ExponentVector a = e.alpha, b = e.beta;
    Rational n = e.n;
    if (a == b) {
      if (why) *why = "leg with equal labels " + exp_to_string(a);
      return {};
    }
    if (b < a) {
      std::swap(a, b);
      n = -n;
    }
    auto [it, fresh] = table.emplace(std::make_pair(a, b), n);
    if (!fresh && it->second != n) {
      if (why)
        *why = "antisymmetry violated on {" + exp_to_string(a) + ", " + exp_to_string(b) + "}";
      return {};
    }
  }
  return table;
}

// Boundary cycle of each subdivision cell, recovered from the dual edges and
// legs incident to the cell's curve vertex.
inline std::vector<std::vector<ExponentVector>> cell_cycles(const DualTropicalCurve& curve) {
  std::size_t cells = curve.vertices.size();
  std::vector<std::vector<std::pair<ExponentVector, ExponentVector>>> incident(cells);
  for (const auto& e : curve.bounded_edges) {
    incident[e.cell_a].push_back({e.alpha, e.beta});
    incident[e.cell_b].push_back({e.alpha, e.beta});
  }
  for (const auto& l : curve.legs) incident[l.cell].push_back({l.alpha, l.beta});
  std::vector<std::vector<ExponentVector>> cycles;
  for (auto edges : incident) {
    std::vector<ExponentVector> cyc;
    cyc.push_back(edges.back().first);
    cyc.push_back(edges.back().second);
    edges.pop_back();
    while (!edges.empty()) {
      bool advanced = false;
      for (std::size_t i = 0; i < edges.size(); ++i) {
        ExponentVector next;
        if (edges[i].first == cyc.back())
          next = edges[i].second;
        else if (edges[i].second == cyc.back())
          next = edges[i].first;
        else
          continue;
        edges.erase(edges.begin() + static_cast<long>(i));
        if (next == cyc.front()) {
          if (!edges.empty()) throw std::logic_error("cell_cycles: disconnected cell boundary");
        } else {
          cyc.push_back(next);
        }
        advanced = true;
        break;
      }
      if (!advanced) throw std::logic_error("cell_cycles: cell boundary does not chain");
    }
    cycles.push_back(cyc);
  }
  return cycles;
}

}  // namespace detail

// Integrality, antisymmetry, leg-set match, and zero signed sums around
// every dual-curve vertex. On failure, `why` names the first violated
// constraint and its location.
inline bool validate_tropical_section(const TropicalSection3D& s, const DualTropicalCurve& curve,
                                      std::string* why = nullptr) {
  std::string local;
  auto table = detail::section_table(s, &local);
  if (!local.empty()) {
    if (why) *why = local;
    return false;
  }
  std::set<std::pair<ExponentVector, ExponentVector>> expected;
  for (const auto& e : curve.bounded_edges)
    expected.insert(std::minmax(e.alpha, e.beta));
  for (const auto& l : curve.legs) expected.insert(std::minmax(l.alpha, l.beta));
  for (const auto& key : expected)
    if (!table.count(key)) {
      if (why)
        *why = "missing leg {" + exp_to_string(key.first) + ", " + exp_to_string(key.second) + "}";
      return false;
    }
  for (const auto& [key, n] : table) {
    if (!expected.count(key)) {
      if (why)
        *why = "leg {" + exp_to_string(key.first) + ", " + exp_to_string(key.second) +
               "} is not an edge of the dual curve";
      return false;
    }
    if (denominator(n) != 1) {
      if (why)
        *why = "integrality violated on {" + exp_to_string(key.first) + ", " +
               exp_to_string(key.second) + "}: n = " + rational_to_string(n);
      return false;
    }
  }
  auto value = [&](const ExponentVector& a, const ExponentVector& b) {
    return b < a ? -table.at({b, a}) : table.at({a, b});
  };
  auto cycles = detail::cell_cycles(curve);
  for (std::size_t ci = 0; ci < cycles.size(); ++ci) {
    const auto& cyc = cycles[ci];
    Rational sum = 0;
    for (std::size_t i = 0; i < cyc.size(); ++i) sum += value(cyc[i], cyc[(i + 1) % cyc.size()]);
    if (sum != 0) {
      if (why)
        *why = "signed sum " + rational_to_string(sum) + " around the dual-curve vertex of cell " +
               std::to_string(ci) + " is nonzero";
      return false;
    }
  }
  return true;
}

// Cech bundle on the double-chamber cover {U_{alpha beta}}, one chart per
// dual-curve edge or leg. Two charts overlap over a shared chamber c; the
// transition is the (1+w)-power with exponent n(x -> c) + n(c -> y), the
// gauge comparison of the two non-shared chambers x, y through c.
inline MirrorLineBundle syz_transform_3d(const TropicalSection3D& s,
                                         const DualTropicalCurve& curve) {
  std::string why;
  if (!validate_tropical_section(s, curve, &why)) throw InvalidInput("syz_transform_3d: " + why);
  auto table = detail::section_table(s, nullptr);
  auto value = [&](const ExponentVector& a, const ExponentVector& b) {
    return b < a ? -table.at({b, a}) : table.at({a, b});
  };
  std::vector<std::pair<ExponentVector, ExponentVector>> pairs(
      [&] {
        std::set<std::pair<ExponentVector, ExponentVector>> unique;
        for (const auto& e : curve.bounded_edges) unique.insert(std::minmax(e.alpha, e.beta));
        for (const auto& l : curve.legs) unique.insert(std::minmax(l.alpha, l.beta));
        return std::vector<std::pair<ExponentVector, ExponentVector>>(unique.begin(), unique.end());
      }());

  MirrorLineBundle out;
  for (const auto& [a, b] : pairs) out.bundle.charts.push_back("U" + exp_to_string(a) + exp_to_string(b));
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      ExponentVector shared, xi, yj;
      int common = 0;
      for (const ExponentVector& c : {pairs[i].first, pairs[i].second})
        if (c == pairs[j].first || c == pairs[j].second) {
          shared = c;
          ++common;
        }
      if (common != 1) continue;
      xi = pairs[i].first == shared ? pairs[i].second : pairs[i].first;
      yj = pairs[j].first == shared ? pairs[j].second : pairs[j].first;
      Rational expo = value(xi, shared) + value(shared, yj);
      GluingUnit t = unit_one(2);
      t.opw_exp = numerator(expo).convert_to<Int>();
      out.bundle.overlaps.insert({static_cast<int>(i), static_cast<int>(j)});
      out.bundle.transitions[{static_cast<int>(i), static_cast<int>(j)}] = t;
    }
  if (!out.bundle.verify(&why)) throw std::logic_error("syz_transform_3d: " + why);
  return out;
}

inline MirrorLineBundle syz_transform_3d(const TropicalSection3D& s, const SYZBase3D& base) {
  return syz_transform_3d(s, base.curve);
}

// Numeric value of a unit at a point of the w-plane, with all chart
// coordinates set to 1.
inline std::complex<double> eval_unit_at(const GluingUnit& u, std::complex<double> w) {
  return to_double(u.coeff) * ipow(w, u.w_exp) * ipow(1.0 + w, u.opw_exp);
}

// Winding of the transition about w = -1, by summed argument increments
// along the circle |w + 1| = radius. For a unit this recovers the
// (1+w)-exponent; the error before rounding is far below 1e-3.
inline double transition_winding(const GluingUnit& u, int samples = 1024, double radius = 0.5) {
  double total = 0;
  std::complex<double> prev = eval_unit_at(u, -1.0 + std::polar(radius, 0.0));
  for (int k = 1; k <= samples; ++k) {
    std::complex<double> cur =
        eval_unit_at(u, -1.0 + std::polar(radius, 2 * M_PI * k / samples));
    total += std::arg(cur / prev);
    prev = cur;
  }
  return total / (2 * M_PI);
}

}  // namespace syz
