#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "syz/subdivision.hpp"

using namespace syz;

namespace {

RegularSubdivision p2_subdivision() {
  auto f = parse_laurent("4 + z1 + z2 + z1^-1*z2^-1", 2);
  Lifting h;
  h[{0, 0}] = Rational(-1);
  h[{1, 0}] = 0;
  h[{0, 1}] = 0;
  h[{-1, -1}] = 0;
  return regular_subdivision(newton_polytope(f), h);
}

}  // namespace

TEST_CASE("interior lifting splits the triangle into three unimodular cells") {
  auto S = p2_subdivision();
  REQUIRE(S.points.size() == 4);
  REQUIRE(S.cells.size() == 3);
  for (int ci = 0; ci < 3; ++ci) {
    CHECK(oracle::cell_is_lower_face(S, ci));
    CHECK(cell_vertices(S, ci).size() == 3);
  }
  REQUIRE(is_unimodular(S));
  // every cell contains the interior point (0,0)
  int origin = -1;
  for (std::size_t i = 0; i < S.points.size(); ++i)
    if (S.points[i] == ExponentVector{0, 0}) origin = static_cast<int>(i);
  REQUIRE(origin >= 0);
  for (const auto& cell : S.cells)
    CHECK(std::count(cell.begin(), cell.end(), origin) == 1);
  // cells tile the polytope: areas add up (shoelace on the hull cycles)
  Rational total = 0;
  for (std::size_t ci = 0; ci < S.cells.size(); ++ci) {
    std::vector<ExponentVector> cyc;
    for (int i : cell_vertices(S, static_cast<int>(ci))) cyc.push_back(S.points[i]);
    total += abs(oracle::shoelace_twice(cyc));
  }
  REQUIRE(total == abs(oracle::shoelace_twice(S.polytope.vertices)));
}

TEST_CASE("flat lifting keeps one cell") {
  auto f = parse_laurent("1 + z1 + z2", 2);
  Lifting flat;
  for (const auto& a : newton_polytope(f).lattice_points) flat[a] = 0;
  auto S = regular_subdivision(newton_polytope(f), flat);
  REQUIRE(S.cells.size() == 1);
  REQUIRE(S.cells[0].size() == 3);
  REQUIRE(oracle::cell_is_lower_face(S, 0));
}

TEST_CASE("segment subdivision splits at the lifted midpoint") {
  Lifting h;
  h[{0}] = Rational(-3);
  h[{1}] = Rational(-9, 4);
  h[{2}] = 0;
  auto S = regular_subdivision(lattice_polytope(1, {{0}, {2}}), h);
  REQUIRE(S.cells == std::vector<std::vector<int>>{{0, 1}, {1, 2}});
  for (int ci = 0; ci < 2; ++ci) CHECK(oracle::cell_is_lower_face(S, ci));
}

TEST_CASE("missing vertex height is rejected") {
  Lifting h;
  h[{0}] = 0;  // no height for the vertex (2)
  LatticePolytope seg = lattice_polytope(1, {{0}, {2}});
  RegularSubdivision S;
  bool threw = false;
  try {
    S = regular_subdivision(seg, h);
  } catch (const MissingVertexLifting&) {
    threw = true;
  }
  // zero-completion is the caller's job; the library wants explicit heights
  // for at least the polytope vertices
  REQUIRE(threw);
}

TEST_CASE("non-simplicial cells are reported with the offending cell") {
  auto f = parse_laurent("1 + z1 + z2 + z1*z2", 2);
  Lifting flat;
  for (const auto& a : newton_polytope(f).lattice_points) flat[a] = 0;
  auto S = regular_subdivision(newton_polytope(f), flat);  // flat: one square cell
  REQUIRE(S.cells.size() == 1);
  try {
    is_unimodular(S);
    FAIL("expected NonSimplicialCell");
  } catch (const NonSimplicialCell& e) {
    REQUIRE(e.cell.size() == 4);
  }
}

TEST_CASE("dual curve of the three-cell subdivision") {
  auto S = p2_subdivision();
  auto curve = dual_tropical_curve(S);
  REQUIRE(curve.vertices.size() == 3);
  std::set<std::pair<Rational, Rational>> verts;
  for (const auto& v : curve.vertices) verts.insert({v[0], v[1]});
  std::set<std::pair<Rational, Rational>> expected = {
      {Rational(1), Rational(1)}, {Rational(1), Rational(-2)}, {Rational(-2), Rational(1)}};
  REQUIRE(verts == expected);
  REQUIRE(curve.bounded_edges.size() == 3);
  REQUIRE(curve.legs.size() == 3);

  for (const auto& e : curve.bounded_edges) {
    // edge direction is primitive and orthogonal to its dual subdivision edge
    Int g = std::abs(std::gcd(e.dir[0], e.dir[1]));
    CHECK(g == 1);
    Int dot = e.dir[0] * (e.beta[0] - e.alpha[0]) + e.dir[1] * (e.beta[1] - e.alpha[1]);
    CHECK(dot == 0);
  }
  for (const auto& l : curve.legs) {
    Int dot = l.dir[0] * (l.beta[0] - l.alpha[0]) + l.dir[1] * (l.beta[1] - l.alpha[1]);
    CHECK(dot == 0);
    // outward: pointing away from the vertex centroid
    Rational cx = 0, cy = 0;
    for (const auto& v : curve.vertices) {
      cx += v[0];
      cy += v[1];
    }
    cx /= 3;
    cy /= 3;
    Rational away = (l.base[0] - cx) * l.dir[0] + (l.base[1] - cy) * l.dir[1];
    CHECK(away >= 0);
  }

  // adjacency reflects shared subdivision edges
  REQUIRE(curve.adjacent({0, 0}, {1, 0}));
  REQUIRE(curve.adjacent({1, 0}, {0, 1}));
  REQUIRE_FALSE(curve.adjacent({1, 0}, {2, 0}));
  auto labels = curve.chamber_labels();
  REQUIRE(labels.size() == 4);
}

TEST_CASE("dual curve edges balance at every vertex") {
  // tropical balancing: at each vertex the primitive directions of incident
  // edges and legs (with outgoing orientation) sum to zero
  auto S = p2_subdivision();
  auto curve = dual_tropical_curve(S);
  for (std::size_t ci = 0; ci < curve.vertices.size(); ++ci) {
    std::array<Int, 2> sum = {0, 0};
    for (const auto& e : curve.bounded_edges) {
      if (e.cell_a == static_cast<int>(ci)) {
        sum[0] += e.dir[0];
        sum[1] += e.dir[1];
      } else if (e.cell_b == static_cast<int>(ci)) {
        sum[0] -= e.dir[0];
        sum[1] -= e.dir[1];
      }
    }
    for (const auto& l : curve.legs)
      if (l.cell == static_cast<int>(ci)) {
        sum[0] += l.dir[0];
        sum[1] += l.dir[1];
      }
    CHECK(sum[0] == 0);
    CHECK(sum[1] == 0);
  }
}
