#include <catch2/catch_amalgamated.hpp>

#include "syz/toric_fan.hpp"

using namespace syz;

namespace {

Fan p2_fan() {
  auto f = parse_laurent("4 + z1 + z2 + z1^-1*z2^-1", 2);
  Lifting h;
  h[{0, 0}] = Rational(-1);
  h[{1, 0}] = 0;
  h[{0, 1}] = 0;
  h[{-1, -1}] = 0;
  return fan_from_subdivision(regular_subdivision(newton_polytope(f), h));
}

}  // namespace

TEST_CASE("four-term pencil gives the anticanonical cone fan") {
  auto fan = p2_fan();
  REQUIRE(fan.rank == 3);
  std::set<IntVec> rays(fan.rays.begin(), fan.rays.end());
  REQUIRE(rays == std::set<IntVec>{{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {-1, -1, 1}});
  REQUIRE(fan.max_cones.size() == 3);
  for (const auto& cone : fan.max_cones) REQUIRE(cone.size() == 3);

  auto eta = calabi_yau_certificate(fan);
  REQUIRE(eta);
  REQUIRE(*eta == IntVec{0, 0, 1});
  REQUIRE(smoothness_check(fan));
  REQUIRE(support_convexity(fan));
}

TEST_CASE("three-term pencil gives one unimodular cone") {
  auto f = parse_laurent("1 + z1 + z2", 2);
  Lifting flat;
  for (const auto& a : newton_polytope(f).lattice_points) flat[a] = 0;
  auto fan = fan_from_subdivision(regular_subdivision(newton_polytope(f), flat));
  REQUIRE(fan.max_cones.size() == 1);
  REQUIRE(fan.rays.size() == 3);
  IntMat g = {fan.rays[0], fan.rays[1], fan.rays[2]};
  Int d = det(g);
  REQUIRE((d == 1 || d == -1));
  REQUIRE(smoothness_check(fan));
}

TEST_CASE("segment fan has the expected rays and transition") {
  Lifting h;
  h[{0}] = Rational(-3);
  h[{1}] = Rational(-9, 4);
  h[{2}] = 0;
  auto fan = fan_from_subdivision(regular_subdivision(lattice_polytope(1, {{0}, {2}}), h));
  std::set<IntVec> rays(fan.rays.begin(), fan.rays.end());
  REQUIRE(rays == std::set<IntVec>{{0, 1}, {1, 1}, {2, 1}});
  REQUIRE(fan.max_cones.size() == 2);
  REQUIRE(calabi_yau_certificate(fan) == IntVec{0, 1});
  REQUIRE(smoothness_check(fan));

  // transitions between the two charts compose to the identity
  IntMat m01 = chart_transition(fan, 0, 1);
  IntMat m10 = chart_transition(fan, 1, 0);
  REQUIRE(mat_mul(m01, m10) == identity_matrix(2));
  Int d = det(m01);
  REQUIRE((d == 1 || d == -1));
}

TEST_CASE("chart transitions are a cocycle on the anticanonical fan") {
  auto fan = p2_fan();
  IntMat m01 = chart_transition(fan, 0, 1);
  IntMat m12 = chart_transition(fan, 1, 2);
  IntMat m20 = chart_transition(fan, 2, 0);
  bool id_one_way = mat_mul(mat_mul(m01, m12), m20) == identity_matrix(3);
  bool id_other_way = mat_mul(m20, mat_mul(m12, m01)) == identity_matrix(3);
  REQUIRE((id_one_way || id_other_way));  // composition order is a convention
  REQUIRE(mat_mul(m01, chart_transition(fan, 1, 0)) == identity_matrix(3));
}

TEST_CASE("certificate is null when no supporting level exists") {
  Fan fan;
  fan.rank = 2;
  fan.rays = {{1, 0}, {3, 2}, {1, 1}};
  fan.max_cones = {{0, 2}, {1, 2}};
  REQUIRE_FALSE(calabi_yau_certificate(fan).has_value());
}

TEST_CASE("smoothness fails on a non-unimodular cone") {
  Fan fan;
  fan.rank = 2;
  fan.rays = {{1, 0}, {1, 2}};
  fan.max_cones = {{0, 1}};
  REQUIRE_FALSE(smoothness_check(fan));  // index 2 cone

  auto f = parse_laurent("1 + z1^2 + z2^2", 2);
  Lifting flat;
  for (const auto& a : newton_polytope(f).lattice_points) flat[a] = 0;
  auto F = fan_from_subdivision(regular_subdivision(newton_polytope(f), flat));
  REQUIRE_FALSE(smoothness_check(F));
}

TEST_CASE("support convexity fails for disjoint quadrant cones") {
  Fan fan;
  fan.rank = 2;
  fan.rays = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  fan.max_cones = {{0, 1}, {2, 3}};  // first and third quadrants only
  REQUIRE_FALSE(support_convexity(fan));
}

TEST_CASE("maximal-minor gcd detects sublattices") {
  REQUIRE(gcd_of_maximal_minors({{1, 0}, {0, 1}}) == 1);
  REQUIRE(gcd_of_maximal_minors({{2, 0}, {0, 2}}) == 4);
  REQUIRE(gcd_of_maximal_minors({{1, 0, 1}, {0, 1, 1}}) == 1);
  REQUIRE(gcd_of_maximal_minors({{2, 4}}) == 2);
}
