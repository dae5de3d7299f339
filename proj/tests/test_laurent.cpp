#include <catch2/catch_amalgamated.hpp>

#include "syz/laurent.hpp"

using namespace syz;

TEST_CASE("expression parsing produces exact terms") {
  auto f = parse_laurent("4 + z1 + z2 + z1^-1*z2^-1", 2);
  REQUIRE(f.dim == 2);
  REQUIRE(f.terms.size() == 4);
  REQUIRE(f.terms.at({0, 0}) == ComplexRational{4, 0});
  REQUIRE(f.terms.at({1, 0}) == ComplexRational{1, 0});
  REQUIRE(f.terms.at({0, 1}) == ComplexRational{1, 0});
  REQUIRE(f.terms.at({-1, -1}) == ComplexRational{1, 0});
}

TEST_CASE("coefficients parse as exact rationals") {
  auto f = parse_laurent("0.5 z1 - 2/3 + 1.25i z1^3", 1);
  REQUIRE(f.terms.at({1}) == ComplexRational{Rational(1, 2), 0});
  REQUIRE(f.terms.at({0}) == ComplexRational{Rational(-2, 3), 0});
  REQUIRE(f.terms.at({3}) == ComplexRational{0, Rational(5, 4)});
}

TEST_CASE("like terms merge and cancel") {
  auto f = parse_laurent("z1 + z1 - 2 z1 + 3", 1);
  REQUIRE(f.terms.count({1}) == 0);  // cancelled exactly
  REQUIRE(f.terms.at({0}) == ComplexRational{3, 0});
}

TEST_CASE("parse errors carry a position") {
  try {
    parse_laurent("1 + + z1", 1);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    REQUIRE(e.position == 4);
  }
  REQUIRE_THROWS_AS(parse_laurent("z3", 2), ParseError);   // index out of range
  REQUIRE_THROWS_AS(parse_laurent("z1^x", 1), ParseError); // malformed exponent
  REQUIRE_THROWS_AS(parse_laurent("", 1), ParseError);
}

TEST_CASE("to_expression round-trips through the parser") {
  auto f = parse_laurent("4 + z1 + z2 + z1^-1*z2^-1", 2);
  auto g = parse_laurent(to_expression(f), 2);
  REQUIRE(f == g);
}

TEST_CASE("newton polytope of the four-term pencil") {
  auto f = parse_laurent("4 + z1 + z2 + z1^-1*z2^-1", 2);
  auto P = newton_polytope(f);
  REQUIRE(P.dim == 2);
  std::set<ExponentVector> verts(P.vertices.begin(), P.vertices.end());
  REQUIRE(verts == std::set<ExponentVector>{{1, 0}, {0, 1}, {-1, -1}});
  REQUIRE(P.lattice_points.size() == 4);  // the origin is interior
}

TEST_CASE("tropicalization evaluates the lifted max") {
  auto f = parse_laurent("1 + z1 + z2", 2);
  Lifting h;
  h[{0, 0}] = Rational(1, 2);
  auto t = tropicalize(f, h);
  // at the origin: max(0 - 1/2, 0, 0) = 0, attained by (1,0) and (0,1)
  REQUIRE(t.eval_exact({0, 0}) == 0);
  auto tie = t.argmax_exact({0, 0});
  REQUIRE(tie == std::vector<ExponentVector>{{0, 1}, {1, 0}});
  REQUIRE(t.eval_exact({2, 1}) == 2);
  REQUIRE_THROWS_AS(tropicalize(f, Lifting{{{5, 5}, Rational(1)}}), InvalidInput);
}

TEST_CASE("numeric evaluation matches exact arithmetic") {
  auto f = parse_laurent("4 + z1 + z2 + z1^-1*z2^-1", 2);
  auto v = eval_at(f, {{1.0, 0.0}, {1.0, 0.0}});
  REQUIRE(std::abs(v - std::complex<double>(7.0, 0.0)) < 1e-14);
  // ipow handles negative exponents via the reciprocal
  REQUIRE(std::abs(ipow({2.0, 0.0}, -3) - std::complex<double>(0.125, 0.0)) < 1e-16);
  REQUIRE(std::abs(ipow({0.0, 1.0}, 4) - std::complex<double>(1.0, 0.0)) < 1e-15);
}
