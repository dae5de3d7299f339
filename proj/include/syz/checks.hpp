#pragma once

// The invariant suite: nine end-to-end checks with pinned expected values,
// shared by the acceptance binary and the `check` CLI command. Each check
// reports pass/fail, a detail line naming the tolerance it enforced, and
// its runtime against a budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "syz/amoeba.hpp"
#include "syz/fibration.hpp"
#include "syz/gluing.hpp"
#include "syz/subdivision.hpp"
#include "syz/toric_fan.hpp"
#include "syz/transform.hpp"

namespace syz {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
  double budget = 0;

  bool within_budget() const { return seconds < budget; }
};

namespace checks {

struct Harness {
  std::ostringstream detail;
  bool ok = true;

  // Failed requirements accumulate on the detail line; notes describe the
  // enforced tolerances and measured values for the passing case.
  void require(bool cond, const std::string& what) {
    if (cond) return;
    ok = false;
    if (!detail.str().empty()) detail << "; ";
    detail << "failed: " << what;
  }
  void note(const std::string& what) {
    if (!detail.str().empty()) detail << "; ";
    detail << what;
  }
};

inline LaurentPolynomial local_p2_f() { return parse_laurent("4 + z1 + z2 + z1^-1*z2^-1", 2); }

inline RegularSubdivision local_p2_subdivision() {
  Lifting h;
  h[{0, 0}] = Rational(-1);
  h[{1, 0}] = 0;
  h[{0, 1}] = 0;
  h[{-1, -1}] = 0;
  return regular_subdivision(newton_polytope(local_p2_f()), h);
}

// 1: the fan mirror to the canonical bundle of the projective plane.
inline void check_local_p2_fan(Harness& h) {
  auto fan = fan_from_subdivision(local_p2_subdivision());
  std::set<IntVec> rays(fan.rays.begin(), fan.rays.end());
  std::set<IntVec> expected = {{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {-1, -1, 1}};
  h.require(rays == expected, "ray set {(0,0,1),(1,0,1),(0,1,1),(-1,-1,1)}");
  h.require(fan.max_cones.size() == 3, "three maximal cones");
  auto eta = calabi_yau_certificate(fan);
  h.require(eta && *eta == IntVec{0, 0, 1}, "eta = (0,0,1)");
  h.require(smoothness_check(fan), "smooth = true");
  h.require(support_convexity(fan), "convex_support = true");
  h.note("rays, eta, smoothness, convexity: exact");
}

// 2: the three-term pencil gives affine 3-space, i.e. one unimodular cone.
inline void check_affine3_mirror(Harness& h) {
  auto f = parse_laurent("1 + z1 + z2", 2);
  Lifting flat;
  for (const auto& a : newton_polytope(f).lattice_points) flat[a] = 0;
  auto fan = fan_from_subdivision(regular_subdivision(newton_polytope(f), flat));
  h.require(fan.max_cones.size() == 1, "single maximal cone");
  h.require(fan.rays.size() == 3, "three rays");
  if (fan.rays.size() == 3) {
    IntMat g = {fan.rays[0], fan.rays[1], fan.rays[2]};
    Int d = det(g);
    h.require(d == 1 || d == -1,
              "ray matrix determinant +-1 (unimodular, so GL3(Z)-equivalent to the octant)");
  }
  h.require(calabi_yau_certificate(fan).has_value(), "eta exists");
  h.require(smoothness_check(fan), "smooth = true");
  h.note("single unimodular cone: exact integer check");
}

// 3: two-root conic fibration with roots at e and e^2: walls at 1 and 2.
inline void check_resolution_base(Harness& h) {
  // (z - e)(z - e^2) with e given as an exact decimal truncation; the
  // truncation moves the walls by ~1e-19, far inside the 1e-9 gate.
  Rational e = parse_rational("2.71828182845904523536028747135266249776");
  LaurentPolynomial f;
  f.dim = 1;
  f.add_term({0}, {e * e * e, 0});
  f.add_term({1}, {-(e + e * e), 0});
  f.add_term({2}, {Rational(1), 0});
  auto base = base_2d(conic_fibration(f));
  h.require(base.walls.size() == 2, "two walls");
  if (base.walls.size() == 2) {
    h.require(std::abs(base.walls[0] - 1.0) < 1e-9 && std::abs(base.walls[1] - 2.0) < 1e-9,
              "walls {1, 2} within 1e-9");
  }
  h.require(base.chambers.size() == 3, "three chambers");
  auto m = monodromy_2d();
  h.require(m.m[0][0] == 1 && m.m[0][1] == 1 && m.m[1][0] == 0 && m.m[1][1] == 1,
            "monodromy [[1,1],[0,1]]");
  // fan over the segment [0,2] subdivided at 1 by the coefficient-size
  // lifting (any heights in the same lower-hull class give the same fan)
  Lifting hv;
  hv[{0}] = Rational(-3);
  hv[{1}] = Rational(-9, 4);
  hv[{2}] = 0;
  LatticePolytope seg = lattice_polytope(1, {{0}, {2}});
  auto fan = fan_from_subdivision(regular_subdivision(seg, hv));
  std::set<IntVec> rays(fan.rays.begin(), fan.rays.end());
  std::set<IntVec> expected = {{0, 1}, {1, 1}, {2, 1}};
  h.require(rays == expected, "segment fan rays (0,1),(1,1),(2,1)");
  if (base.walls.size() == 2)
    h.note("walls " + std::to_string(base.walls[0]) + ", " + std::to_string(base.walls[1]) +
           " within 1e-9 of {1, 2}; monodromy and rays exact");
}

// 4: wall-crossing algebra: unit identity, toric identification, cocycles.
inline void check_wall_crossing_cocycles(Harness& h, unsigned seed) {
  h.require(unit_w(2) * unit_one_plus_w_inverse(2) == unit_one_plus_w(2),
            "w * (1 + w^-1) = (1 + w)");
  auto curve = dual_tropical_curve(local_p2_subdivision());
  auto labels = curve.chamber_labels();
  for (const auto& a : labels) {
    auto ident = toric_identification(a, curve);
    h.require(ident.verified, "toric identification at " + exp_to_string(a));
    h.require(ident.checked_walls > 0, "identification checked at least one wall");
  }
  // all triangle loops
  int triangles = 0;
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = i + 1; j < labels.size(); ++j)
      for (std::size_t k = j + 1; k < labels.size(); ++k) {
        if (!curve.adjacent(labels[i], labels[j]) || !curve.adjacent(labels[j], labels[k]) ||
            !curve.adjacent(labels[k], labels[i]))
          continue;
        ++triangles;
        std::vector<ChartGluing> loop = {wall_crossing_3d(labels[i], labels[j], curve),
                                         wall_crossing_3d(labels[j], labels[k], curve),
                                         wall_crossing_3d(labels[k], labels[i], curve)};
        h.require(verify_cocycle(loop), "triangle cocycle " + exp_to_string(labels[i]) +
                                            exp_to_string(labels[j]) + exp_to_string(labels[k]));
      }
  h.require(triangles == 4, "four triangle loops in the adjacency graph");
  // randomized closed walks on the adjacency graph
  std::mt19937 rng(seed);
  for (int trial = 0; trial < 50; ++trial) {
    std::uniform_int_distribution<std::size_t> pick(0, labels.size() - 1);
    std::uniform_int_distribution<int> len(2, 6);
    ExponentVector start = labels[pick(rng)];
    std::vector<ExponentVector> walk = {start};
    int steps = len(rng);
    for (int s = 0; s < steps; ++s) {
      std::vector<ExponentVector> nbrs;
      for (const auto& b : labels)
        if (curve.adjacent(walk.back(), b)) nbrs.push_back(b);
      std::uniform_int_distribution<std::size_t> next(0, nbrs.size() - 1);
      walk.push_back(nbrs[next(rng)]);
    }
    if (walk.back() != start) {
      if (!curve.adjacent(walk.back(), start)) {
        --trial;  // cannot close this walk; redraw
        continue;
      }
      walk.push_back(start);
    }
    std::vector<ChartGluing> loop;
    for (std::size_t s = 0; s + 1 < walk.size(); ++s)
      loop.push_back(wall_crossing_3d(walk[s], walk[s + 1], curve));
    if (!verify_cocycle(loop)) {
      h.require(false, "random loop cocycle, trial " + std::to_string(trial));
      return;
    }
  }
  h.note("unit identity, toric identification, 4 triangle and 50 random loops: exact");
}

// 5: bundle degree equals the path's signed intersection number, and the
// argument-principle oracle recovers (1+w)-exponents.
inline void check_path_degree_identity(Harness& h, unsigned seed) {
  auto f = parse_laurent("2 - 3 z1 + z1^2", 1);  // roots 1 and 2
  auto base = base_2d(conic_fibration(f));
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> ux(0.2, 3.0);
  std::uniform_real_distribution<double> uy(0.1, 1.0);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> nverts(2, 9);
  for (int trial = 0; trial < 25; ++trial) {
    AdmissiblePath2D g;
    g.cut_a = 1.0;
    g.cut_b = 2.0;
    int n = nverts(rng);
    for (int v = 0; v < n; ++v)
      g.vertices.push_back({ux(rng), (coin(rng) ? 1 : -1) * uy(rng)});
    Int inter = intersection_number_2d(g);
    auto xi = wall_values_from_path(g, {1.0, 2.0});
    auto bundle = syz_transform_2d(xi, base);
    if (!bundle.degree || *bundle.degree != inter) {
      h.require(false, "degree == intersection number, trial " + std::to_string(trial) +
                           " (degree " +
                           (bundle.degree ? std::to_string(*bundle.degree) : "none") +
                           ", intersections " + std::to_string(inter) + ")");
      return;
    }
  }
  double worst = 0;
  for (Int n = -2; n <= 2; ++n) {
    GluingUnit u = unit_one(1);
    u.opw_exp = -n;
    double w = transition_winding(u);
    worst = std::max(worst, std::abs(w + static_cast<double>(n)));
    h.require(std::abs(w + static_cast<double>(n)) < 1e-3,
              "argument-principle winding of (1+w)^" + std::to_string(-n) + " within 1e-3");
  }
  std::ostringstream werr;
  werr.precision(2);
  werr << std::scientific << worst;
  h.note("25 random paths: degree == intersection exactly; winding oracle error " + werr.str() +
         " < 1e-3");
}

// 6: the zero section maps to the structure sheaf, and winding degrees of
// explicit sections match their spiral counts.
inline void check_zero_section(Harness& h) {
  auto curve = dual_tropical_curve(local_p2_subdivision());
  auto zero = section_from_gradient({Rational(0), Rational(0)}, curve);
  auto bundle = syz_transform_3d(zero, curve);
  h.require(bundle.structure_sheaf(), "zero section gives the all-ones cocycle");
  h.require(winding_degree({{1.0, 0.0}, {600.0, 0.0}}) == 0, "zero section winding 0");
  for (int k = -2; k <= 2; ++k) {
    std::vector<std::complex<double>> spiral;
    const int m = 257;
    for (int s = 0; s < m; ++s) {
      double t = static_cast<double>(s) / (m - 1);
      spiral.push_back(std::polar(std::exp(t), 2 * M_PI * k * t));
    }
    h.require(winding_degree(spiral) == k, "spiral winding " + std::to_string(k));
  }
  h.note("all-ones cocycle and winding degrees -2..2: exact");
}

// 7: gradient sections pass the finite-difference Lagrangian criterion with
// O(h^2) decay; the rotational control fails it with residual exactly 2.
inline void check_semiflat_criterion(Harness& h, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> uc(-1.0, 1.0);
  GridSpec grid = uniform_grid(2, -1.0, 1.0, 5);
  double worst = 0, worst_ratio_lo = 4, worst_ratio_hi = 4;
  for (int trial = 0; trial < 10; ++trial) {
    // random quartic potential phi; xi = grad phi in closed form
    double c[5][5];
    for (int a = 0; a <= 4; ++a)
      for (int b = 0; b <= 4 - a; ++b) c[a][b] = uc(rng);
    auto xi = [&c](const std::vector<double>& x) {
      double gx = 0, gy = 0;
      for (int a = 0; a <= 4; ++a)
        for (int b = 0; b <= 4 - a; ++b) {
          if (a > 0) gx += c[a][b] * a * std::pow(x[0], a - 1) * std::pow(x[1], b);
          if (b > 0) gy += c[a][b] * b * std::pow(x[0], a) * std::pow(x[1], b - 1);
        }
      return std::vector<double>{gx, gy};
    };
    NumericSection s{2, xi, grid};
    worst = std::max(worst, curvature02_residual(s, 1e-4));
    double r1 = curvature02_residual(s, 2e-3);
    double r2 = curvature02_residual(s, 1e-3);
    if (r2 > 1e-12) {  // decay ratio is meaningful only above rounding noise
      worst_ratio_lo = std::min(worst_ratio_lo, r1 / r2);
      worst_ratio_hi = std::max(worst_ratio_hi, r1 / r2);
    }
  }
  std::ostringstream m;
  m.precision(2);
  m << std::scientific << worst;
  h.require(worst < 1e-5,
            "10 gradient sections: residual < 1e-5 at h = 1e-4 (max " + m.str() + ")");
  h.require(worst_ratio_lo >= 3.5 && worst_ratio_hi <= 4.5,
            "halving h scales the residual by 3.5..4.5 (observed " +
                std::to_string(worst_ratio_lo) + ".." + std::to_string(worst_ratio_hi) + ")");
  NumericSection rot{2, [](const std::vector<double>& x) {
                       return std::vector<double>{x[1], -x[0]};
                     },
                     grid};
  double control = curvature02_residual(rot, 1e-4);
  h.require(std::abs(control - 2.0) < 1e-6, "rotational control residual 2 within 1e-6");
  h.note("max gradient residual " + m.str() + " < 1e-5; decay ratio in [" +
         std::to_string(worst_ratio_lo) + ", " + std::to_string(worst_ratio_hi) +
         "]; control = 2 within 1e-6");
}

// 8: amoeba membership against the closed-form triangle-inequality oracle.
inline void check_amoeba_oracle(Harness& h) {
  auto f = parse_laurent("1 + z1 + z2", 2);
  const int n = 64;
  AmoebaRaster raster = amoeba_raster(f, {-4, -4, 4, 4}, n);
  // oracle truth per pixel center: e^x, e^y, 1 satisfy all triangle inequalities
  auto oracle = [](double x, double y) {
    double ex = std::exp(x), ey = std::exp(y);
    return ex + ey >= 1 && 1 + ey >= ex && 1 + ex >= ey;
  };
  std::vector<std::uint8_t> truth(static_cast<std::size_t>(n) * n);
  int agree = 0;
  std::vector<std::pair<int, int>> disagreements;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      auto p = raster.center(i, j);
      truth[static_cast<std::size_t>(j) * n + i] = oracle(p[0], p[1]) ? 1 : 0;
      bool member = amoeba_membership(f, {p[0], p[1]});
      if (member == (truth[static_cast<std::size_t>(j) * n + i] != 0))
        ++agree;
      else
        disagreements.push_back({i, j});
    }
  double rate = 100.0 * agree / (n * n);
  std::ostringstream pct;
  pct.precision(2);
  pct << std::fixed << rate;
  h.require(rate >= 99.0, "membership agreement >= 99% (" + pct.str() + "%)");
  // any disagreement must sit within 2 pixels of the oracle boundary
  for (auto [i, j] : disagreements) {
    bool near_boundary = false;
    for (int dj = -2; dj <= 2 && !near_boundary; ++dj)
      for (int di = -2; di <= 2 && !near_boundary; ++di) {
        int ii = i + di, jj = j + dj;
        if (ii < 0 || jj < 0 || ii >= n || jj >= n) continue;
        if (truth[static_cast<std::size_t>(jj) * n + ii] !=
            truth[static_cast<std::size_t>(j) * n + i])
          near_boundary = true;
      }
    if (!near_boundary) {
      h.require(false, "disagreement at pixel (" + std::to_string(i) + "," + std::to_string(j) +
                           ") farther than 2 pixels from the oracle boundary");
      return;
    }
  }
  auto lab = chamber_labeling(raster, f);
  h.require(lab.count == 3, "three complement components");
  std::set<ExponentVector> labels(lab.labels.begin(), lab.labels.end());
  h.require(labels == std::set<ExponentVector>{{0, 0}, {1, 0}, {0, 1}},
            "component labels {(0,0),(1,0),(0,1)}");
  h.note("agreement " + pct.str() + "% >= 99% on 64x64, band <= 2px; 3 labeled components");
}

// 9: fibers of the SYZ map are Lagrangian to rounding accuracy; the plain
// z-projection is the non-Lagrangian control.
inline void check_fiber_lagrangian(Harness& h, unsigned seed) {
  auto f = parse_laurent("8 - 6 z1 + z1^2", 1);  // roots 2 and 4
  auto X = conic_fibration(f);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> ur(0.5, 5.0);
  std::uniform_real_distribution<double> ua(0.0, 2 * M_PI);
  std::uniform_real_distribution<double> um(0.5, 2.0);
  double worst = 0;
  for (int trial = 0; trial < 20; ++trial) {
    std::complex<double> z = std::polar(ur(rng), ua(rng));
    std::complex<double> x = std::polar(um(rng), ua(rng));
    auto p = point_on_hypersurface(X, {z}, x);
    worst = std::max(worst, fiber_lagrangian_residual(X, p, FiberMap::syz));
  }
  std::ostringstream w;
  w.precision(2);
  w << std::scientific << worst;
  h.require(worst < 1e-8, "20 random regular points: residual < 1e-8 (max " + w.str() + ")");
  auto p = point_on_hypersurface(X, {{1.0, 0.5}}, {0.7, -0.3});
  double control = fiber_lagrangian_residual(X, p, FiberMap::z_projection);
  h.require(control > 1e-2,
            "z-projection control residual " + std::to_string(control) + " > 1e-2");
  h.note("max residual " + w.str() + " < 1e-8 at 20 points; control " +
         std::to_string(control) + " > 1e-2");
}

}  // namespace checks

inline std::vector<CheckResult> run_all_checks(unsigned seed) {
  struct Entry {
    int id;
    const char* name;
    double budget;
    std::function<void(checks::Harness&)> fn;
  };
  const std::vector<Entry> entries = {
      {1, "local_p2_fan", 1.0, [](checks::Harness& h) { checks::check_local_p2_fan(h); }},
      {2, "affine3_mirror", 1.0, [](checks::Harness& h) { checks::check_affine3_mirror(h); }},
      {3, "resolution_base", 1.0, [](checks::Harness& h) { checks::check_resolution_base(h); }},
      {4, "wall_crossing_cocycles", 1.0,
       [seed](checks::Harness& h) { checks::check_wall_crossing_cocycles(h, seed); }},
      {5, "path_degree_identity", 5.0,
       [seed](checks::Harness& h) { checks::check_path_degree_identity(h, seed); }},
      {6, "zero_section_winding", 1.0, [](checks::Harness& h) { checks::check_zero_section(h); }},
      {7, "semiflat_lagrangian", 5.0,
       [seed](checks::Harness& h) { checks::check_semiflat_criterion(h, seed); }},
      {8, "amoeba_oracle", 30.0, [](checks::Harness& h) { checks::check_amoeba_oracle(h); }},
      {9, "fiber_lagrangian", 5.0,
       [seed](checks::Harness& h) { checks::check_fiber_lagrangian(h, seed); }},
  };
  std::vector<CheckResult> results;
  for (const auto& e : entries) {
    CheckResult r;
    r.id = e.id;
    r.name = e.name;
    r.budget = e.budget;
    checks::Harness h;
    auto t0 = std::chrono::steady_clock::now();
    try {
      e.fn(h);
      r.passed = h.ok;
      r.detail = h.detail.str();
    } catch (const std::exception& ex) {
      r.passed = false;
      r.detail = std::string("exception: ") + ex.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.passed && !r.within_budget()) {
      r.passed = false;
      r.detail += (r.detail.empty() ? "" : "; ") + std::string("over time budget");
    }
    results.push_back(std::move(r));
  }
  return results;
}

inline std::string format_check_line(const CheckResult& r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs/%.0fs", r.seconds, r.budget);
  return std::string(r.passed ? "PASS" : "FAIL") + "  " + std::to_string(r.id) + " " + r.name +
         " [" + buf + "] " + r.detail;
}

}  // namespace syz
