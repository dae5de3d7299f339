#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "syz/amoeba.hpp"

using namespace syz;

TEST_CASE("membership matches the triangle oracle everywhere on the grid") {
  auto f = parse_laurent("1 + z1 + z2", 2);
  int agree = 0, total = 0;
  for (int j = 0; j < 32; ++j)
    for (int i = 0; i < 32; ++i) {
      double x = -4 + 8.0 * (i + 0.5) / 32, y = -4 + 8.0 * (j + 0.5) / 32;
      bool member = amoeba_membership(f, {x, y});
      if (member == oracle::triangle_amoeba(x, y)) ++agree;
      ++total;
    }
  REQUIRE(agree == total);
}

TEST_CASE("membership at hand-picked points") {
  auto f = parse_laurent("1 + z1 + z2", 2);
  CHECK(amoeba_membership(f, {0.0, 0.0}));      // spine vertex
  CHECK(amoeba_membership(f, {2.0, 2.0}));      // on the diagonal tentacle
  CHECK_FALSE(amoeba_membership(f, {-2.0, -2.0}));  // constant-term chamber
  CHECK_FALSE(amoeba_membership(f, {3.0, -3.0}));
  CHECK_FALSE(amoeba_membership(f, {-3.0, 3.0}));
}

TEST_CASE("certified raster brackets the oracle") {
  auto f = parse_laurent("1 + z1 + z2", 2);
  AmoebaRaster r = amoeba_raster(f, {-4, -4, 4, 4}, 64);
  for (int j = 0; j < r.ny; ++j)
    for (int i = 0; i < r.nx; ++i) {
      auto p = r.center(i, j);
      // unmarked pixels are certified outside; oracle must agree at the center
      if (!r.at(i, j)) {
        REQUIRE_FALSE(oracle::triangle_amoeba(p[0], p[1]));
      }
    }
  // and every oracle-inside center sits on a marked pixel
  for (int j = 0; j < r.ny; ++j)
    for (int i = 0; i < r.nx; ++i) {
      auto p = r.center(i, j);
      if (oracle::triangle_amoeba(p[0], p[1])) REQUIRE(r.at(i, j));
    }
}

TEST_CASE("complement components carry the lattice-point labels") {
  auto f = parse_laurent("1 + z1 + z2", 2);
  AmoebaRaster r = amoeba_raster(f, {-4, -4, 4, 4}, 64);
  auto lab = chamber_labeling(r, f);
  REQUIRE(lab.count == 3);
  std::set<ExponentVector> labels(lab.labels.begin(), lab.labels.end());
  REQUIRE(labels == std::set<ExponentVector>{{0, 0}, {1, 0}, {0, 1}});
  for (int k = 0; k < lab.count; ++k) {
    CHECK(lab.unbounded[k]);  // all three chambers of the line are unbounded
    // the representative itself must be an unmarked pixel center
    CHECK_FALSE(amoeba_membership(f, {lab.representatives[k][0], lab.representatives[k][1]}));
  }
}

TEST_CASE("four-term pencil has a bounded central chamber") {
  auto f = parse_laurent("4 + z1 + z2 + z1^-1*z2^-1", 2);
  AmoebaRaster r = amoeba_raster(f, {-6, -6, 6, 6}, 96);
  auto lab = chamber_labeling(r, f);
  REQUIRE(lab.count == 4);
  std::set<ExponentVector> labels(lab.labels.begin(), lab.labels.end());
  REQUIRE(labels == std::set<ExponentVector>{{0, 0}, {1, 0}, {0, 1}, {-1, -1}});
  for (int k = 0; k < lab.count; ++k) {
    if (lab.labels[k] == ExponentVector{0, 0})
      CHECK_FALSE(lab.unbounded[k]);  // the origin chamber is the bounded one
    else
      CHECK(lab.unbounded[k]);
  }
}

TEST_CASE("unresolvable windows are reported") {
  auto f = parse_laurent("1 + z1 + z2", 2);
  // a tiny window around the spine vertex sees no complement at all
  AmoebaRaster r = amoeba_raster(f, {-0.4, -0.4, 0.4, 0.4}, 16);
  REQUIRE_THROWS_AS(chamber_labeling(r, f), UnresolvedComponents);
}

TEST_CASE("raster input validation") {
  auto f = parse_laurent("1 + z1 + z2", 2);
  REQUIRE_THROWS_AS(amoeba_raster(f, {-4, -4, 4, 4}, 8), InvalidInput);    // resolution < 16
  REQUIRE_THROWS_AS(amoeba_raster(f, {4, -4, -4, 4}, 64), InvalidInput);   // empty box
  REQUIRE_THROWS_AS(amoeba_raster(f, {-4, -4, 4, 4}, 64, 2.0), InvalidInput);  // tol >= 1
}

TEST_CASE("tube distance to the tropical spine") {
  auto f = parse_laurent("1 + z1 + z2", 2);
  Lifting flat;
  for (const auto& a : newton_polytope(f).lattice_points) flat[a] = 0;
  auto curve = dual_tropical_curve(regular_subdivision(newton_polytope(f), flat));
  REQUIRE(curve.vertices.size() == 1);
  REQUIRE(tube_distance(curve, {0.0, 0.0}) == 0.0);        // on the vertex
  REQUIRE(tube_distance(curve, {3.0, 3.0}) < 1e-12);       // on the diagonal leg
  // nearest piece to both points is the downward leg {(0, -t)}
  REQUIRE(tube_distance(curve, {-1.0, -2.0}) == Catch::Approx(1.0));
  REQUIRE(tube_distance(curve, {1.0, -1.0}) == Catch::Approx(1.0));
}
