#pragma once

// The conic fibration X = {xy = f(z)}: hypersurface membership, the S^1
// moment map and its Kaehler form, the 2d SYZ base (walls at log root
// moduli, chambers, monodromy), the combinatorial 3d base, and numeric
// residuals testing whether candidate fibers are Lagrangian.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "syz/amoeba.hpp"
#include "syz/laurent.hpp"

namespace syz {

struct EqualModulusRoots : std::runtime_error {
  explicit EqualModulusRoots(const std::string& what) : std::runtime_error(what) {}
};

struct SingularFiberPoint : std::runtime_error {
  explicit SingularFiberPoint(const std::string& what) : std::runtime_error(what) {}
};

struct ConicFibrationSpace {
  LaurentPolynomial f;  // d = 1 (2d case) or d = 2 (3d case)
};

inline ConicFibrationSpace conic_fibration(const LaurentPolynomial& f) {
  if (f.is_zero()) throw InvalidInput("conic_fibration: f = 0");
  if (f.dim != 1 && f.dim != 2) throw InvalidInput("conic_fibration: f must have 1 or 2 variables");
  return {f};
}

// Points of C^2 x (C^*)^n as (x, y, z_1, ..., z_n).
using CPoint = std::vector<std::complex<double>>;

inline bool on_hypersurface(const ConicFibrationSpace& X, const CPoint& p, double tol = 1e-8) {
  if (static_cast<int>(p.size()) != X.f.dim + 2)
    throw InvalidInput("on_hypersurface: expected " + std::to_string(X.f.dim + 2) + " coordinates");
  std::vector<std::complex<double>> z(p.begin() + 2, p.end());
  for (const auto& zi : z)
    if (zi == std::complex<double>(0, 0)) throw InvalidInput("on_hypersurface: zero z-coordinate");
  std::complex<double> fz = eval_at(X.f, z);
  return std::abs(p[0] * p[1] - fz) < tol * (1.0 + std::abs(fz));
}

inline double moment_map(std::complex<double> x, std::complex<double> y) {
  return 0.5 * (std::norm(x) - std::norm(y));
}

// Convenience: the point (x, f(z)/x, z) on X.
inline CPoint point_on_hypersurface(const ConicFibrationSpace& X,
                                    const std::vector<std::complex<double>>& z,
                                    std::complex<double> x) {
  if (x == std::complex<double>(0, 0)) throw InvalidInput("point_on_hypersurface: x = 0");
  CPoint p;
  p.push_back(x);
  p.push_back(eval_at(X.f, z) / x);
  for (const auto& zi : z) p.push_back(zi);
  return p;
}

// The Hamiltonian S^1 action e^{i t}.(x, y, z) = (e^{i t} x, e^{-i t} y, z).
inline CPoint circle_act(const CPoint& p, double t) {
  CPoint q = p;
  q[0] *= std::polar(1.0, t);
  q[1] *= std::polar(1.0, -t);
  return q;
}

inline std::array<double, 2> syz_fibration_2d(const ConicFibrationSpace& X, const CPoint& p,
                                              double tol = 1e-8) {
  if (X.f.dim != 1) throw InvalidInput("syz_fibration_2d: f must be univariate");
  if (!on_hypersurface(X, p, tol))
    throw InvalidInput("syz_fibration_2d: point is off the hypersurface");
  return {std::log(std::abs(p[2])), moment_map(p[0], p[1])};
}

// Kaehler pairing omega(v, w) = Im(v_x conj(w_x)) + Im(v_y conj(w_y))
//                               + Im(v_z conj(w_z)) / |z|^2
// (the standard form on C^2 times the cylinder metric on C^*), evaluated on
// real tangent vectors given as complex triples; z is the base point's
// z-coordinate.
inline double standard_omega(const std::array<std::complex<double>, 3>& v,
                             const std::array<std::complex<double>, 3>& w,
                             std::complex<double> z) {
  auto im = [](std::complex<double> a, std::complex<double> b) {
    return std::imag(a * std::conj(b));
  };
  return im(v[0], w[0]) + im(v[1], w[1]) + im(v[2], w[2]) / std::norm(z);
}

// Roots of a univariate Laurent polynomial in C^* via the companion matrix
// of the shifted ordinary polynomial.
inline std::vector<std::complex<double>> polynomial_roots(const LaurentPolynomial& f) {
  if (f.dim != 1) throw InvalidInput("polynomial_roots: f must be univariate");
  if (f.is_zero()) throw InvalidInput("polynomial_roots: f = 0");
  Int lo = f.terms.begin()->first[0];
  Int hi = f.terms.rbegin()->first[0];
  int n = static_cast<int>(hi - lo);
  if (n == 0) return {};
  std::vector<std::complex<double>> c(n + 1, 0.0);
  for (const auto& [e, coef] : f.terms) c[static_cast<std::size_t>(e[0] - lo)] = to_complex(coef);
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -c[i] / c[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion, false);
  std::vector<std::complex<double>> roots(n);
  for (int i = 0; i < n; ++i) roots[i] = es.eigenvalues()(i);
  return roots;
}

struct SYZBase2D {
  struct Chamber {
    std::string name;
    double lo, hi;  // open interval times R
  };
  std::vector<double> walls;  // s_1 < ... < s_k, strictly increasing
  std::vector<Chamber> chambers;
  std::vector<std::array<double, 2>> discriminant;  // (s_i, 0)
};

// Walls at the logs of the root moduli. Moduli may be supplied exactly;
// otherwise they are found numerically. Throws EqualModulusRoots when two
// moduli coincide up to the relative gap.
inline SYZBase2D base_2d(const ConicFibrationSpace& X, std::vector<double> root_moduli = {},
                         double min_gap = 1e-9) {
  if (X.f.dim != 1) throw InvalidInput("base_2d: f must be univariate");
  if (root_moduli.empty())
    for (const auto& r : polynomial_roots(X.f)) root_moduli.push_back(std::abs(r));
  for (double mod : root_moduli)
    if (!(mod > 0)) throw InvalidInput("base_2d: root moduli must be positive");
  std::sort(root_moduli.begin(), root_moduli.end());
  for (std::size_t i = 0; i + 1 < root_moduli.size(); ++i)
    if (root_moduli[i + 1] - root_moduli[i] <= min_gap * root_moduli[i + 1])
      throw EqualModulusRoots("base_2d: root moduli " + std::to_string(root_moduli[i]) + " and " +
                              std::to_string(root_moduli[i + 1]) + " are not separated");
  SYZBase2D base;
  for (double mod : root_moduli) {
    double s = std::log(mod);
    base.walls.push_back(s);
    base.discriminant.push_back({s, 0.0});
  }
  double inf = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i <= base.walls.size(); ++i)
    base.chambers.push_back({"U" + std::to_string(i), i == 0 ? -inf : base.walls[i - 1],
                             i == base.walls.size() ? inf : base.walls[i]});
  return base;
}

struct MonodromyMatrix {
  std::array<std::array<Int, 2>, 2> m;
};

// Monodromy of the fiber lattice around a wall's discriminant point,
// counter-clockwise convention; loops < 0 gives the clockwise inverse.
inline MonodromyMatrix monodromy_2d(Int loops = 1) { return {{{{1, loops}, {0, 1}}}}; }

struct SYZBase3D {
  AmoebaRaster raster;       // walls are the amoeba swept vertically
  ChamberLabeling labeling;  // chambers are complement components times R
  DualTropicalCurve curve;
};

inline SYZBase3D base_3d(const ConicFibrationSpace& X, Box2D box, int resolution,
                         double tol = 1e-6, Lifting lifting = {}) {
  if (X.f.dim != 2) throw InvalidInput("base_3d: f must be bivariate");
  auto P = newton_polytope(X.f);
  if (lifting.empty())
    for (const auto& a : P.lattice_points) lifting[a] = 0;
  SYZBase3D base;
  base.raster = amoeba_raster(X.f, box, resolution, tol);
  base.labeling = chamber_labeling(base.raster, X.f);
  base.curve = dual_tropical_curve(regular_subdivision(P, lifting));
  return base;
}

// A box around the dual curve's vertices, padded by margin on each side.
inline Box2D default_box(const DualTropicalCurve& curve, double margin = 4.0) {
  Box2D b{-margin, -margin, margin, margin};
  if (!curve.vertices.empty()) {
    double x0 = to_double(curve.vertices[0][0]), x1 = x0;
    double y0 = to_double(curve.vertices[0][1]), y1 = y0;
    for (const auto& v : curve.vertices) {
      x0 = std::min(x0, to_double(v[0]));
      x1 = std::max(x1, to_double(v[0]));
      y0 = std::min(y0, to_double(v[1]));
      y1 = std::max(y1, to_double(v[1]));
    }
    b = {x0 - margin, y0 - margin, x1 + margin, y1 + margin};
  }
  return b;
}

// Candidate base maps whose fibers inside X are tested for being Lagrangian.
enum class FiberMap {
  syz,           // (log|z|, mu): the SYZ fibration
  re_z_moment,   // (Re z, mu): Poisson-commutes, so fibers are also Lagrangian
  z_projection   // (Re z, Im z): conic fibers, symplectic, residual near 1
};

// Tangent space of the candidate fiber at p = kernel of the four real
// constraints (the complex hypersurface equation plus the two base-map
// differentials); the residual is |omega| on the kernel's orthonormal basis
// pairs. A rank drop of the constraint matrix is a singular fiber point.
inline double fiber_lagrangian_residual(const ConicFibrationSpace& X, const CPoint& p,
                                        FiberMap map = FiberMap::syz, double rank_tol = 1e-8) {
  if (X.f.dim != 1) throw InvalidInput("fiber_lagrangian_residual: f must be univariate");
  if (!on_hypersurface(X, p, 1e-8))
    throw InvalidInput("fiber_lagrangian_residual: point is off the hypersurface");
  std::complex<double> x = p[0], y = p[1], z = p[2];

  // f'(z) for the univariate Laurent polynomial
  std::complex<double> df = 0;
  for (const auto& [e, coef] : X.f.terms)
    df += to_complex(coef) * double(e[0]) * ipow(z, e[0] - 1);

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(4, 6);
  // complex-linear functional a*v_x + b*v_y + c*v_z as two real rows
  auto complex_rows = [&](int row, std::complex<double> a, std::complex<double> b,
                          std::complex<double> c) {
    std::complex<double> coef[3] = {a, b, c};
    for (int k = 0; k < 3; ++k) {
      A(row, 2 * k) = coef[k].real();
      A(row, 2 * k + 1) = -coef[k].imag();
      A(row + 1, 2 * k) = coef[k].imag();
      A(row + 1, 2 * k + 1) = coef[k].real();
    }
  };
  complex_rows(0, y, x, -df);  // d(xy - f(z))

  switch (map) {
    case FiberMap::syz:
      // d log|z| = Re(conj(z) v_z) / |z|^2
      A(2, 4) = z.real() / std::norm(z);
      A(2, 5) = z.imag() / std::norm(z);
      // d mu = Re(conj(x) v_x) - Re(conj(y) v_y)
      A(3, 0) = x.real();
      A(3, 1) = x.imag();
      A(3, 2) = -y.real();
      A(3, 3) = -y.imag();
      break;
    case FiberMap::re_z_moment:
      A(2, 4) = 1;
      A(3, 0) = x.real();
      A(3, 1) = x.imag();
      A(3, 2) = -y.real();
      A(3, 3) = -y.imag();
      break;
    case FiberMap::z_projection:
      A(2, 4) = 1;
      A(3, 5) = 1;
      break;
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double smax = sv(0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > rank_tol * smax) ++rank;
  if (smax == 0 || rank < 4)
    throw SingularFiberPoint("fiber_lagrangian_residual: constraint rank " + std::to_string(rank) +
                             " < 4 (singular fiber point)");

  auto column_vector = [&](int c) {
    std::array<std::complex<double>, 3> v;
    for (int k = 0; k < 3; ++k)
      v[k] = {svd.matrixV()(2 * k, c), svd.matrixV()(2 * k + 1, c)};
    return v;
  };
  double residual = 0;
  for (int i = 4; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      residual = std::max(residual, std::abs(standard_omega(column_vector(i), column_vector(j), z)));
  return residual;
}

}  // namespace syz
