#pragma once

// Regular subdivisions of lattice polytopes from lifting functions (exact
// lower-hull face enumeration, d <= 2), unimodularity, and dual tropical
// curves (d = 2): one vertex per cell, bounded edges dual to interior edges,
// legs dual to boundary edges.

#include <array>
#include <map>
#include <set>
#include <vector>

#include "syz/laurent.hpp"
#include "syz/polytope.hpp"

namespace syz {

struct MissingVertexLifting : std::runtime_error {
  explicit MissingVertexLifting(const std::string& what) : std::runtime_error(what) {}
};

struct NonSimplicialCell : std::runtime_error {
  std::vector<int> cell;  // offending cell, as indices into points
  NonSimplicialCell(const std::string& what, std::vector<int> c)
      : std::runtime_error(what), cell(std::move(c)) {}
};

struct RegularSubdivision {
  LatticePolytope polytope;
  std::vector<ExponentVector> points;  // lifting support A, lex-sorted
  std::vector<Rational> heights;       // aligned with points
  std::vector<std::vector<int>> cells; // point indices, each sorted; cells lex-sorted
  // shared (d-1)-face between adjacent cells, keyed by (cell, cell), i < j
  std::map<std::pair<int, int>, std::vector<int>> adjacency;

  Rational height_of(const ExponentVector& a) const {
    auto it = std::lower_bound(points.begin(), points.end(), a);
    if (it == points.end() || *it != a) throw std::invalid_argument("height_of: unknown point");
    return heights[it - points.begin()];
  }
};

namespace detail {

inline std::vector<std::vector<int>> lower_hull_cells_1d(const std::vector<ExponentVector>& pts,
                                                         const std::vector<Rational>& h) {
  std::set<std::vector<int>> cells;
  int n = static_cast<int>(pts.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Rational dx = Rational(pts[j][0] - pts[i][0]);
      // line through lifted i, j: slope m, offset c
      Rational m = (h[j] - h[i]) / dx;
      std::vector<int> face;
      bool lower = true;
      for (int l = 0; l < n; ++l) {
        Rational lhs = h[l] - (h[i] + m * Rational(pts[l][0] - pts[i][0]));
        if (lhs < 0) {
          lower = false;
          break;
        }
        if (lhs == 0) face.push_back(l);
      }
      if (lower) cells.insert(face);
    }
  return {cells.begin(), cells.end()};
}

inline std::vector<std::vector<int>> lower_hull_cells_2d(const std::vector<ExponentVector>& pts,
                                                         const std::vector<Rational>& h) {
  std::set<std::vector<int>> cells;
  int n = static_cast<int>(pts.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        // normal of the plane through the lifted triple
        Rational ux = Rational(pts[j][0] - pts[i][0]), uy = Rational(pts[j][1] - pts[i][1]), uz = h[j] - h[i];
        Rational vx = Rational(pts[k][0] - pts[i][0]), vy = Rational(pts[k][1] - pts[i][1]), vz = h[k] - h[i];
        Rational nx = uy * vz - uz * vy;
        Rational ny = uz * vx - ux * vz;
        Rational nz = ux * vy - uy * vx;
        if (nz == 0) continue;  // vertical plane or collinear projection
        if (nz < 0) {
          nx = -nx;
          ny = -ny;
          nz = -nz;
        }
        Rational c = nx * Rational(pts[i][0]) + ny * Rational(pts[i][1]) + nz * h[i];
        std::vector<int> face;
        bool lower = true;
        for (int l = 0; l < n; ++l) {
          Rational val = nx * Rational(pts[l][0]) + ny * Rational(pts[l][1]) + nz * h[l] - c;
          if (val < 0) {
            lower = false;
            break;
          }
          if (val == 0) face.push_back(l);
        }
        if (lower) cells.insert(face);
      }
  return {cells.begin(), cells.end()};
}

}  // namespace detail

inline RegularSubdivision regular_subdivision(const LatticePolytope& P, const Lifting& h) {
  if (P.dim != 1 && P.dim != 2) throw InvalidInput("regular_subdivision: dim must be 1 or 2");
  if (P.dim == 2 && P.boundary.empty())
    throw InvalidInput("regular_subdivision: polytope is not full-dimensional");
  RegularSubdivision S;
  S.polytope = P;
  for (const auto& [a, v] : h) {
    if (!std::binary_search(P.lattice_points.begin(), P.lattice_points.end(), a))
      throw InvalidInput("regular_subdivision: lifting point " + exp_to_string(a) +
                         " is not a lattice point of the polytope");
    S.points.push_back(a);
    S.heights.push_back(v);
  }
  for (const auto& v : P.vertices)
    if (!h.count(v))
      throw MissingVertexLifting("regular_subdivision: lifting support is missing polytope vertex " +
                                 exp_to_string(v));
  S.cells = P.dim == 1 ? detail::lower_hull_cells_1d(S.points, S.heights)
                       : detail::lower_hull_cells_2d(S.points, S.heights);
  int d = P.dim;
  for (int i = 0; i < static_cast<int>(S.cells.size()); ++i)
    for (int j = i + 1; j < static_cast<int>(S.cells.size()); ++j) {
      std::vector<int> shared;
      std::set_intersection(S.cells[i].begin(), S.cells[i].end(), S.cells[j].begin(), S.cells[j].end(),
                            std::back_inserter(shared));
      if (static_cast<int>(shared.size()) >= d) S.adjacency[{i, j}] = shared;
    }
  return S;
}

// Hull-minimal members of a cell, as indices into S.points.
inline std::vector<int> cell_vertices(const RegularSubdivision& S, int cell) {
  const auto& c = S.cells[cell];
  if (S.polytope.dim == 1) {
    return {*std::min_element(c.begin(), c.end(),
                              [&](int a, int b) { return S.points[a] < S.points[b]; }),
            *std::max_element(c.begin(), c.end(),
                              [&](int a, int b) { return S.points[a] < S.points[b]; })};
  }
  std::vector<ExponentVector> pts;
  for (int i : c) pts.push_back(S.points[i]);
  auto hull = detail::hull2(pts);
  std::vector<int> out;
  for (const auto& v : hull) {
    auto it = std::lower_bound(S.points.begin(), S.points.end(), v);
    out.push_back(static_cast<int>(it - S.points.begin()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool is_unimodular(const RegularSubdivision& S) {
  int d = S.polytope.dim;
  for (int ci = 0; ci < static_cast<int>(S.cells.size()); ++ci) {
    auto verts = cell_vertices(S, ci);
    if (static_cast<int>(verts.size()) != d + 1)
      throw NonSimplicialCell("is_unimodular: cell " + std::to_string(ci) + " is not a simplex",
                              S.cells[ci]);
    IntMat m;
    for (int vi : verts) {
      IntVec row(S.points[vi].begin(), S.points[vi].end());
      row.push_back(1);
      m.push_back(row);
    }
    Int dt = det(m);
    if (dt != 1 && dt != -1) return false;
  }
  return true;
}

struct DualTropicalCurve {
  struct Edge {
    int cell_a = 0, cell_b = 0;           // adjacent cells, a < b
    std::array<Rational, 2> from, to;     // dual vertices of the two cells
    std::array<Int, 2> dir;               // primitive, from -> to
    ExponentVector alpha, beta;           // endpoints of the dual subdivision edge
  };
  struct Leg {
    int cell = 0;
    std::array<Rational, 2> base;         // dual vertex of the cell
    std::array<Int, 2> dir;               // primitive, outward
    ExponentVector alpha, beta;           // endpoints of the dual boundary edge
  };
  std::vector<std::array<Rational, 2>> vertices;  // one per cell
  std::vector<Edge> bounded_edges;
  std::vector<Leg> legs;
  TropicalFunction trop;

  // Chamber labels alpha, beta are adjacent iff {alpha, beta} is an edge of
  // the subdivision, i.e. dual to a bounded edge or a leg.
  bool adjacent(const ExponentVector& a, const ExponentVector& b) const {
    for (const auto& e : bounded_edges)
      if ((e.alpha == a && e.beta == b) || (e.alpha == b && e.beta == a)) return true;
    for (const auto& l : legs)
      if ((l.alpha == a && l.beta == b) || (l.alpha == b && l.beta == a)) return true;
    return false;
  }

  std::vector<ExponentVector> chamber_labels() const {
    std::set<ExponentVector> s;
    for (const auto& e : bounded_edges) {
      s.insert(e.alpha);
      s.insert(e.beta);
    }
    for (const auto& l : legs) {
      s.insert(l.alpha);
      s.insert(l.beta);
    }
    return {s.begin(), s.end()};
  }
};

namespace detail {

inline std::array<Rational, 2> dual_vertex(const RegularSubdivision& S, int cell) {
  const auto& c = S.cells[cell];
  const ExponentVector& a0 = S.points[c[0]];
  Rational h0 = S.heights[c[0]];
  // two independent rows <a_i - a_0, x> = h_i - h_0
  std::vector<std::array<Rational, 3>> rows;
  for (std::size_t i = 1; i < c.size() && rows.size() < 2; ++i) {
    Rational rx = Rational(S.points[c[i]][0] - a0[0]);
    Rational ry = Rational(S.points[c[i]][1] - a0[1]);
    Rational rh = S.heights[c[i]] - h0;
    if (rows.size() == 1) {
      Rational d = rows[0][0] * ry - rows[0][1] * rx;
      if (d == 0) continue;
    }
    rows.push_back({rx, ry, rh});
  }
  if (rows.size() < 2) throw std::logic_error("dual_vertex: degenerate cell");
  Rational d = rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0];
  Rational x = (rows[0][2] * rows[1][1] - rows[0][1] * rows[1][2]) / d;
  Rational y = (rows[0][0] * rows[1][2] - rows[0][2] * rows[1][0]) / d;
  return {x, y};
}

inline std::array<Int, 2> primitive_direction(const Rational& dx, const Rational& dy) {
  BigInt nx = numerator(dx) * denominator(dy);
  BigInt ny = numerator(dy) * denominator(dx);
  BigInt g = gcd(abs(nx), abs(ny));
  if (g != 0) {
    nx /= g;
    ny /= g;
  }
  return {nx.convert_to<Int>(), ny.convert_to<Int>()};
}

}  // namespace detail

inline DualTropicalCurve dual_tropical_curve(const RegularSubdivision& S) {
  if (S.polytope.dim != 2) throw InvalidInput("dual_tropical_curve: defined for d = 2 only");
  DualTropicalCurve curve;
  curve.trop.dim = 2;
  for (std::size_t i = 0; i < S.points.size(); ++i) curve.trop.heights[S.points[i]] = S.heights[i];
  for (int ci = 0; ci < static_cast<int>(S.cells.size()); ++ci)
    curve.vertices.push_back(detail::dual_vertex(S, ci));

  // bounded edges, dual to interior (shared) edges
  std::set<std::pair<ExponentVector, ExponentVector>> interior;
  for (const auto& [cells, shared] : S.adjacency) {
    DualTropicalCurve::Edge e;
    e.cell_a = cells.first;
    e.cell_b = cells.second;
    e.from = curve.vertices[e.cell_a];
    e.to = curve.vertices[e.cell_b];
    std::vector<ExponentVector> pts;
    for (int s : shared) pts.push_back(S.points[s]);
    std::sort(pts.begin(), pts.end());
    e.alpha = pts.front();
    e.beta = pts.back();
    e.dir = detail::primitive_direction(e.to[0] - e.from[0], e.to[1] - e.from[1]);
    interior.insert({e.alpha, e.beta});
    curve.bounded_edges.push_back(e);
  }

  // legs, dual to boundary edges of cells
  Rational cx = 0, cy = 0;  // interior reference point: vertex centroid
  for (const auto& v : S.polytope.vertices) {
    cx += Rational(v[0]);
    cy += Rational(v[1]);
  }
  cx /= static_cast<int>(S.polytope.vertices.size());
  cy /= static_cast<int>(S.polytope.vertices.size());
  for (int ci = 0; ci < static_cast<int>(S.cells.size()); ++ci) {
    std::vector<ExponentVector> pts;
    for (int i : S.cells[ci]) pts.push_back(S.points[i]);
    auto cyc = detail::hull2(pts);
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      ExponentVector a = cyc[i];
      ExponentVector b = cyc[(i + 1) % cyc.size()];
      if (b < a) std::swap(a, b);
      if (interior.count({a, b})) continue;
      DualTropicalCurve::Leg leg;
      leg.cell = ci;
      leg.base = curve.vertices[ci];
      leg.alpha = a;
      leg.beta = b;
      // primitive normal to the dual edge, oriented away from the polytope
      std::array<Int, 2> n = {-(b[1] - a[1]), b[0] - a[0]};
      IntVec prim = primitive({n[0], n[1]});
      Rational mx = (Rational(a[0]) + Rational(b[0])) / 2;
      Rational my = (Rational(a[1]) + Rational(b[1])) / 2;
      Rational side = Rational(prim[0]) * (cx - mx) + Rational(prim[1]) * (cy - my);
      if (side > 0) {
        prim[0] = -prim[0];
        prim[1] = -prim[1];
      }
      leg.dir = {prim[0], prim[1]};
      curve.legs.push_back(leg);
    }
  }
  return curve;
}

}  // namespace syz
