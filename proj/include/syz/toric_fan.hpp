#pragma once

// Fans over regular subdivisions placed at height 1, Calabi-Yau certificates
// by exact integer linear solving, smoothness and support-convexity checks,
// and integer chart-transition matrices between smooth maximal cones.

#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "syz/intlin.hpp"
#include "syz/subdivision.hpp"

namespace syz {

struct Fan {
  int rank = 0;
  std::vector<IntVec> rays;                 // primitive, lex-sorted, distinct
  std::vector<std::vector<int>> max_cones;  // ray indices, each sorted; cones lex-sorted
};

inline Fan fan_from_subdivision(const RegularSubdivision& S) {
  int d = S.polytope.dim;
  Fan F;
  F.rank = d + 1;
  std::set<IntVec> rayset;
  std::vector<std::vector<IntVec>> cone_gens;
  for (int ci = 0; ci < static_cast<int>(S.cells.size()); ++ci) {
    std::vector<IntVec> gens;
    for (int vi : cell_vertices(S, ci)) {
      IntVec r(S.points[vi].begin(), S.points[vi].end());
      r.push_back(1);
      rayset.insert(r);
      gens.push_back(r);
    }
    cone_gens.push_back(gens);
  }
  F.rays.assign(rayset.begin(), rayset.end());
  for (const auto& gens : cone_gens) {
    std::vector<int> cone;
    for (const auto& g : gens)
      cone.push_back(static_cast<int>(std::lower_bound(F.rays.begin(), F.rays.end(), g) - F.rays.begin()));
    std::sort(cone.begin(), cone.end());
    F.max_cones.push_back(cone);
  }
  std::sort(F.max_cones.begin(), F.max_cones.end());
  return F;
}

// Integer vector eta with <eta, ray> = 1 for every ray; absent when the
// system has no integer solution. Among solutions, the one with smallest
// lexicographic absolute value (ties broken toward positive entries).
inline std::optional<IntVec> calabi_yau_certificate(const Fan& F) {
  if (F.rays.empty()) return std::nullopt;
  IntMat a;
  IntVec b;
  for (const auto& r : F.rays) {
    a.push_back(r);
    b.push_back(1);
  }
  IntSolve sol = solve_integer(a, b);
  if (!sol.solvable) return std::nullopt;
  if (sol.kernel.empty()) return sol.particular;
  auto key = [](const IntVec& v) {
    std::vector<std::pair<Int, int>> k;
    for (Int x : v) k.emplace_back(std::abs(x), x < 0 ? 1 : 0);
    return k;
  };
  IntVec best = sol.particular;
  int kdim = static_cast<int>(sol.kernel.size());
  const Int B = 24;  // desk scale: kernel coefficients live well inside this box
  std::vector<Int> c(kdim, -B);
  for (;;) {
    IntVec cand = sol.particular;
    for (int i = 0; i < kdim; ++i)
      for (std::size_t j = 0; j < cand.size(); ++j) cand[j] += c[i] * sol.kernel[i][j];
    if (key(cand) < key(best)) best = cand;
    int i = 0;
    while (i < kdim && c[i] == B) c[i++] = -B;
    if (i == kdim) break;
    ++c[i];
  }
  return best;
}

inline bool smoothness_check(const Fan& F) {
  if (F.max_cones.empty()) return false;
  for (const auto& cone : F.max_cones) {
    if (static_cast<int>(cone.size()) > F.rank) return false;  // not simplicial
    IntMat gens;
    for (int ri : cone) gens.push_back(F.rays[ri]);
    // simplicial with a unimodular generator set: gcd of maximal minors = 1
    Int g = gcd_of_maximal_minors(gens);
    if (g != 1) return false;
  }
  return true;
}

namespace detail {

// q in cone(gens)? Exact, via conic Caratheodory: q is a nonnegative rational
// combination of some linearly independent subset of the generators.
inline bool cone_contains(const std::vector<IntVec>& gens, const std::vector<Rational>& q, int rank) {
  int n = rank;
  int m = static_cast<int>(gens.size());
  std::vector<int> subset;
  std::function<bool(int, int)> rec = [&](int start, int need) -> bool {
    if (static_cast<int>(subset.size()) >= 1) {
      // solve sum lambda_i g_i = q restricted to the chosen subset
      int s = static_cast<int>(subset.size());
      // Gaussian elimination over rationals on the n x (s+1) system
      std::vector<std::vector<Rational>> aug(n, std::vector<Rational>(s + 1));
      for (int r = 0; r < n; ++r) {
        for (int c = 0; c < s; ++c) aug[r][c] = Rational(gens[subset[c]][r]);
        aug[r][s] = q[r];
      }
      int row = 0;
      std::vector<int> pivot_col(s, -1);
      for (int c = 0; c < s && row < n; ++c) {
        int pr = -1;
        for (int r = row; r < n; ++r)
          if (aug[r][c] != 0) {
            pr = r;
            break;
          }
        if (pr < 0) continue;
        std::swap(aug[pr], aug[row]);
        for (int r = 0; r < n; ++r) {
          if (r == row || aug[r][c] == 0) continue;
          Rational f = aug[r][c] / aug[row][c];
          for (int cc = c; cc <= s; ++cc) aug[r][cc] -= f * aug[row][cc];
        }
        pivot_col[c] = row;
        ++row;
      }
      bool independent = true;
      for (int c = 0; c < s; ++c)
        if (pivot_col[c] < 0) independent = false;
      if (independent) {
        bool consistent = true;
        for (int r = row; r < n; ++r)
          if (aug[r][s] != 0) consistent = false;
        if (consistent) {
          bool nonneg = true;
          for (int c = 0; c < s; ++c) {
            Rational lambda = aug[pivot_col[c]][s] / aug[pivot_col[c]][c];
            if (lambda < 0) nonneg = false;
          }
          if (nonneg) return true;
        }
      }
    }
    if (need == 0) return false;
    for (int i = start; i < m; ++i) {
      subset.push_back(i);
      if (rec(i + 1, need - 1)) return true;
      subset.pop_back();
    }
    return false;
  };
  bool zero = true;
  for (const auto& x : q)
    if (x != 0) zero = false;
  if (zero) return true;
  return rec(0, n);
}

}  // namespace detail

// True iff the union of the maximal cones equals the cone over the height-1
// polytope hull of the rays. Exact membership probing on a deterministic
// rational sample set; sufficient at desk scale.
inline bool support_convexity(const Fan& F) {
  if (F.max_cones.empty() || F.rays.empty()) return false;
  auto eta = calabi_yau_certificate(F);
  if (!eta) return false;  // no height-1 structure to compare against
  std::vector<std::vector<IntVec>> cones;
  for (const auto& cone : F.max_cones) {
    std::vector<IntVec> gens;
    for (int ri : cone) gens.push_back(F.rays[ri]);
    cones.push_back(gens);
  }
  auto covered = [&](const std::vector<Rational>& q) {
    for (const auto& gens : cones)
      if (detail::cone_contains(gens, q, F.rank)) return true;
    return false;
  };
  std::vector<std::vector<Rational>> probes;
  auto combo = [&](const std::vector<std::pair<int, Rational>>& terms) {
    std::vector<Rational> q(F.rank, Rational(0));
    for (const auto& [ri, w] : terms)
      for (int k = 0; k < F.rank; ++k) q[k] += w * Rational(F.rays[ri][k]);
    probes.push_back(q);
  };
  int nr = static_cast<int>(F.rays.size());
  for (int i = 0; i < nr; ++i)
    for (int j = i + 1; j < nr; ++j) {
      combo({{i, Rational(1, 2)}, {j, Rational(1, 2)}});
      combo({{i, Rational(1, 4)}, {j, Rational(3, 4)}});
      combo({{i, Rational(3, 4)}, {j, Rational(1, 4)}});
    }
  for (int i = 0; i < nr; ++i)
    for (int j = i + 1; j < nr; ++j)
      for (int k = j + 1; k < nr; ++k)
        combo({{i, Rational(1, 3)}, {j, Rational(1, 3)}, {k, Rational(1, 3)}});
  {
    std::vector<std::pair<int, Rational>> all;
    for (int i = 0; i < nr; ++i) all.emplace_back(i, Rational(1, nr));
    combo(all);
  }
  for (const auto& q : probes)
    if (!covered(q)) return false;
  return true;
}

// Integer matrix of the monomial coordinate change between the affine charts
// of two smooth maximal cones: column j holds the sigma-chart exponents of
// tau's j-th dual-basis coordinate.
inline IntMat chart_transition(const Fan& F, int sigma, int tau) {
  auto gens_of = [&](int ci) {
    const auto& cone = F.max_cones.at(ci);
    if (static_cast<int>(cone.size()) != F.rank)
      throw InvalidInput("chart_transition: cone is not full-dimensional");
    IntMat g(F.rank, IntVec(F.rank));
    for (int j = 0; j < F.rank; ++j)
      for (int i = 0; i < F.rank; ++i) g[i][j] = F.rays[cone[j]][i];  // columns = generators
    return g;
  };
  IntMat gs = gens_of(sigma), gt = gens_of(tau);
  auto at = inverse_unimodular(gt);
  if (!at) throw InvalidInput("chart_transition: target cone is not unimodular");
  // rows of at = dual basis of tau; M = (A_tau * G_sigma)^T
  return transpose(mat_mul(*at, gs));
}

}  // namespace syz
