#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "syz/fibration.hpp"

using namespace syz;

namespace {

// (z - 2)(z - 4): walls at log 2 and log 4
ConicFibrationSpace two_wall_space() {
  return conic_fibration(parse_laurent("8 - 6 z1 + z1^2", 1));
}

}  // namespace

TEST_CASE("conic_fibration validates its defining polynomial") {
  REQUIRE_THROWS_AS(conic_fibration(LaurentPolynomial{1, {}}), InvalidInput);
  REQUIRE_THROWS_AS(conic_fibration(parse_laurent("1 + z1 + z2 + z3", 3)), InvalidInput);
  REQUIRE(conic_fibration(parse_laurent("1 + z1 + z2", 2)).f.dim == 2);
}

TEST_CASE("hypersurface membership and the point constructor") {
  auto X = two_wall_space();
  std::complex<double> z{3.0, 4.0};
  auto p = point_on_hypersurface(X, {z}, {2.0, 0.0});
  REQUIRE(on_hypersurface(X, p));
  REQUIRE(p[0] * p[1] == eval_at(X.f, {z}));

  auto off = p;
  off[1] += 1e-3;
  REQUIRE_FALSE(on_hypersurface(X, off));

  REQUIRE_THROWS_AS(on_hypersurface(X, {p[0], p[1]}), InvalidInput);          // arity
  REQUIRE_THROWS_AS(on_hypersurface(X, {p[0], p[1], {0.0, 0.0}}), InvalidInput);  // z = 0
  REQUIRE_THROWS_AS(point_on_hypersurface(X, {z}, {0.0, 0.0}), InvalidInput);     // x = 0
}

TEST_CASE("circle action stays on the hypersurface and fixes the fibration value") {
  auto X = two_wall_space();
  auto p = point_on_hypersurface(X, {{0.3, 1.7}}, {1.0, -2.0});
  auto base = syz_fibration_2d(X, p);
  for (double t : {0.1, 1.0, 2.5, -3.0}) {
    auto q = circle_act(p, t);
    REQUIRE(on_hypersurface(X, q, 1e-12));
    auto moved = syz_fibration_2d(X, q);
    REQUIRE(moved[0] == base[0]);  // z untouched
    REQUIRE(moved[1] == Catch::Approx(base[1]).margin(1e-12));
  }
}

TEST_CASE("fibration value is (log|z|, (|x|^2 - |y|^2)/2)") {
  auto X = two_wall_space();
  std::complex<double> z{3.0, 4.0};  // |z| = 5
  auto p = point_on_hypersurface(X, {z}, {2.0, 0.0});
  auto b = syz_fibration_2d(X, p);
  REQUIRE(b[0] == Catch::Approx(std::log(5.0)));
  REQUIRE(b[1] == Catch::Approx(0.5 * (4.0 - std::norm(p[1]))));
  REQUIRE(moment_map({2.0, 0.0}, {1.0, 0.0}) == 1.5);
  REQUIRE(moment_map({0.0, 2.0}, {3.0, 0.0}) == -2.5);

  CPoint off{{1.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}};  // xy = 1 but f(1) = 3
  REQUIRE_THROWS_AS(syz_fibration_2d(X, off), InvalidInput);
}

TEST_CASE("roots of ordinary and genuinely Laurent polynomials") {
  auto sorted_roots = [](const LaurentPolynomial& f) {
    auto r = polynomial_roots(f);
    std::sort(r.begin(), r.end(),
              [](auto a, auto b) { return std::abs(a) < std::abs(b); });
    return r;
  };

  auto r = sorted_roots(parse_laurent("8 - 6 z1 + z1^2", 1));
  REQUIRE(r.size() == 2);
  REQUIRE(std::abs(r[0] - 2.0) < 1e-12);
  REQUIRE(std::abs(r[1] - 4.0) < 1e-12);

  // same zero set after multiplying by z^-1
  auto s = sorted_roots(parse_laurent("8 z1^-1 - 6 + z1", 1));
  REQUIRE(s.size() == 2);
  REQUIRE(std::abs(s[0] - 2.0) < 1e-12);
  REQUIRE(std::abs(s[1] - 4.0) < 1e-12);

  REQUIRE(polynomial_roots(parse_laurent("5", 1)).empty());
  REQUIRE_THROWS_AS(polynomial_roots(parse_laurent("1 + z1 + z2", 2)), InvalidInput);
}

TEST_CASE("2d base: walls at log root moduli, chambers U0..Uk") {
  auto base = base_2d(two_wall_space());
  REQUIRE(base.walls.size() == 2);
  REQUIRE(std::abs(base.walls[0] - std::log(2.0)) < 1e-12);
  REQUIRE(std::abs(base.walls[1] - std::log(4.0)) < 1e-12);
  REQUIRE(base.discriminant.size() == 2);
  REQUIRE(base.discriminant[0][0] == base.walls[0]);
  REQUIRE(base.discriminant[0][1] == 0.0);

  REQUIRE(base.chambers.size() == 3);
  REQUIRE(base.chambers[0].name == "U0");
  REQUIRE(base.chambers[1].name == "U1");
  REQUIRE(base.chambers[2].name == "U2");
  REQUIRE(std::isinf(base.chambers[0].lo));
  REQUIRE(base.chambers[0].lo < 0);
  REQUIRE(base.chambers[0].hi == base.walls[0]);
  REQUIRE(base.chambers[1].lo == base.walls[0]);
  REQUIRE(base.chambers[1].hi == base.walls[1]);
  REQUIRE(std::isinf(base.chambers[2].hi));
  REQUIRE(base.chambers[2].hi > 0);

  // constant f: no walls, one chamber covering everything
  auto trivial = base_2d(conic_fibration(parse_laurent("5", 1)));
  REQUIRE(trivial.walls.empty());
  REQUIRE(trivial.chambers.size() == 1);
}

TEST_CASE("coinciding root moduli are rejected") {
  // z^2 - 1 has roots +1 and -1, both on the unit circle
  auto X = conic_fibration(parse_laurent("-1 + z1^2", 1));
  REQUIRE_THROWS_AS(base_2d(X), EqualModulusRoots);

  REQUIRE_THROWS_AS(base_2d(two_wall_space(), {1.0, 1.0 + 1e-12}), EqualModulusRoots);
  REQUIRE_THROWS_AS(base_2d(two_wall_space(), {1.0, -2.0}), InvalidInput);
  REQUIRE(base_2d(two_wall_space(), {1.0, 2.0}).walls.size() == 2);
}

TEST_CASE("wall monodromy is the standard shear") {
  auto m = monodromy_2d();
  REQUIRE(m.m == std::array<std::array<Int, 2>, 2>{{{1, 1}, {0, 1}}});
  auto inv = monodromy_2d(-3);
  REQUIRE(inv.m == std::array<std::array<Int, 2>, 2>{{{1, -3}, {0, 1}}});
}

TEST_CASE("SYZ fibers are Lagrangian; the conic projection is not") {
  auto X = two_wall_space();
  std::mt19937 rng(20240814);
  std::uniform_real_distribution<double> zmod(0.5, 5.0), xmod(0.5, 2.0),
      angle(0.0, 2.0 * 3.14159265358979323846);

  for (int i = 0; i < 20; ++i) {
    std::complex<double> z = std::polar(zmod(rng), angle(rng));
    std::complex<double> x = std::polar(xmod(rng), angle(rng));
    auto p = point_on_hypersurface(X, {z}, x);

    REQUIRE(fiber_lagrangian_residual(X, p, FiberMap::syz) < 1e-8);
    // (Re z, mu) Poisson-commutes with the conic constraint, so its fibers
    // are Lagrangian too; it fails as a fibration globally, not pointwise.
    REQUIRE(fiber_lagrangian_residual(X, p, FiberMap::re_z_moment) < 1e-8);
    // (Re z, Im z) has conic fibers: complex curves, maximally non-Lagrangian
    REQUIRE(fiber_lagrangian_residual(X, p, FiberMap::z_projection) ==
            Catch::Approx(1.0).margin(1e-9));
  }
}

TEST_CASE("the nodal point of a conic fiber is reported as singular") {
  auto X = two_wall_space();
  CPoint pinch{{0.0, 0.0}, {0.0, 0.0}, {2.0, 0.0}};  // x = y = 0 over the root z = 2
  REQUIRE(on_hypersurface(X, pinch));
  REQUIRE_THROWS_AS(fiber_lagrangian_residual(X, pinch), SingularFiberPoint);

  CPoint off{{1.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}};
  REQUIRE_THROWS_AS(fiber_lagrangian_residual(X, off), InvalidInput);
}

TEST_CASE("3d base combines the amoeba raster with the dual curve") {
  auto X = conic_fibration(parse_laurent("1 + z1 + z2", 2));
  auto box = default_box(dual_tropical_curve(regular_subdivision(
      newton_polytope(X.f), {{{0, 0}, 0}, {{1, 0}, 0}, {{0, 1}, 0}})));
  REQUIRE(box.x0 == -4.0);
  REQUIRE(box.y0 == -4.0);
  REQUIRE(box.x1 == 4.0);
  REQUIRE(box.y1 == 4.0);

  auto base = base_3d(X, box, 32);
  REQUIRE(base.raster.nx == 32);
  REQUIRE(base.labeling.count == 3);
  REQUIRE(base.curve.vertices.size() == 1);
  REQUIRE(base.curve.legs.size() == 3);

  REQUIRE_THROWS_AS(base_3d(two_wall_space(), box, 32), InvalidInput);
}
