#pragma once

// Small exact integer linear algebra: determinants, unimodular inverses,
// integer linear solves with kernel bases (column echelon via unimodular
// column operations). Desk scale: dimensions <= 3, a few dozen rows.

#include <cstdlib>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "syz/rational.hpp"

namespace syz {

using IntVec = std::vector<Int>;
using IntMat = std::vector<std::vector<Int>>;  // row-major

inline Int ivec_dot(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("ivec_dot: size mismatch");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline IntVec primitive(IntVec v) {
  Int g = 0;
  for (Int x : v) g = std::gcd(g, std::abs(x));
  if (g > 1)
    for (Int& x : v) x /= g;
  return v;
}

inline IntMat identity_matrix(int n) {
  IntMat m(n, IntVec(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline IntMat mat_mul(const IntMat& a, const IntMat& b) {
  std::size_t n = a.size(), k = b.size(), p = b.empty() ? 0 : b[0].size();
  IntMat c(n, IntVec(p, 0));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != k) throw std::invalid_argument("mat_mul: shape mismatch");
    for (std::size_t j = 0; j < p; ++j)
      for (std::size_t t = 0; t < k; ++t) c[i][j] += a[i][t] * b[t][j];
  }
  return c;
}

inline IntMat transpose(const IntMat& a) {
  if (a.empty()) return {};
  IntMat t(a[0].size(), IntVec(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

inline Int det(const IntMat& a) {
  std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  if (n == 2) return a[0][0] * a[1][1] - a[0][1] * a[1][0];
  Int d = 0;
  for (std::size_t j = 0; j < n; ++j) {
    IntMat minor;
    for (std::size_t i = 1; i < n; ++i) {
      IntVec row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(a[i][c]);
      minor.push_back(row);
    }
    Int term = a[0][j] * det(minor);
    d += (j % 2 == 0) ? term : -term;
  }
  return d;
}

// Integer inverse; defined exactly when |det| = 1.
inline std::optional<IntMat> inverse_unimodular(const IntMat& a) {
  int n = static_cast<int>(a.size());
  Int d = det(a);
  if (d != 1 && d != -1) return std::nullopt;
  IntMat inv(n, IntVec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      IntMat minor;
      for (int r = 0; r < n; ++r) {
        if (r == j) continue;
        IntVec row;
        for (int c = 0; c < n; ++c)
          if (c != i) row.push_back(a[r][c]);
        minor.push_back(row);
      }
      Int cof = det(minor);
      if ((i + j) % 2 != 0) cof = -cof;
      inv[i][j] = cof * d;  // d = 1/det since det = +-1
    }
  return inv;
}

struct IntSolve {
  bool solvable = false;
  IntVec particular;             // one integer solution of A x = b
  std::vector<IntVec> kernel;    // basis of the integer kernel of A
};

// All integer solutions of A x = b via unimodular column reduction A V = H.
inline IntSolve solve_integer(IntMat h, const IntVec& b) {
  std::size_t m = h.size();
  std::size_t n = m == 0 ? 0 : h[0].size();
  IntMat v = identity_matrix(static_cast<int>(n));
  auto col_swap = [&](std::size_t a, std::size_t c) {
    for (std::size_t r = 0; r < m; ++r) std::swap(h[r][a], h[r][c]);
    for (std::size_t r = 0; r < n; ++r) std::swap(v[r][a], v[r][c]);
  };
  auto col_axpy = [&](std::size_t dst, std::size_t src, Int q) {  // col_dst -= q * col_src
    for (std::size_t r = 0; r < m; ++r) h[r][dst] -= q * h[r][src];
    for (std::size_t r = 0; r < n; ++r) v[r][dst] -= q * v[r][src];
  };

  std::size_t col = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
  for (std::size_t row = 0; row < m && col < n; ++row) {
    for (;;) {
      std::size_t best = n;
      for (std::size_t c = col; c < n; ++c)
        if (h[row][c] != 0 && (best == n || std::abs(h[row][c]) < std::abs(h[row][best]))) best = c;
      if (best == n) break;  // row is zero on the free columns
      if (best != col) col_swap(best, col);
      bool clean = true;
      for (std::size_t c = col + 1; c < n; ++c) {
        if (h[row][c] == 0) continue;
        col_axpy(c, col, h[row][c] / h[row][col]);
        if (h[row][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (h[row][col] != 0) {
      pivots.emplace_back(row, col);
      ++col;
    }
  }

  IntSolve out;
  IntVec y(n, 0);
  std::size_t next_pivot = 0;
  for (std::size_t row = 0; row < m; ++row) {
    Int r = b[row];
    for (std::size_t c = 0; c < n; ++c) r -= h[row][c] * y[c];
    if (next_pivot < pivots.size() && pivots[next_pivot].first == row) {
      Int p = h[row][pivots[next_pivot].second];
      if (r % p != 0) return out;  // no integer solution
      y[pivots[next_pivot].second] = r / p;
      ++next_pivot;
    } else if (r != 0) {
      return out;
    }
  }
  out.solvable = true;
  out.particular.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < n; ++c) out.particular[i] += v[i][c] * y[c];
  for (std::size_t c = col; c < n; ++c) {
    IntVec k(n);
    for (std::size_t i = 0; i < n; ++i) k[i] = v[i][c];
    out.kernel.push_back(k);
  }
  return out;
}

// gcd of all k x k minors of a k x n matrix (rows = generators). Equals 1
// exactly when the rows extend to a basis of Z^n.
inline Int gcd_of_maximal_minors(const IntMat& a) {
  std::size_t k = a.size();
  if (k == 0) return 1;
  std::size_t n = a[0].size();
  if (k > n) throw std::invalid_argument("gcd_of_maximal_minors: more rows than columns");
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  Int g = 0;
  for (;;) {
    IntMat sub(k, IntVec(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) sub[i][j] = a[i][idx[j]];
    g = std::gcd(g, std::abs(det(sub)));
    // next k-combination of columns
    bool advanced = false;
    std::size_t i = k;
    while (i-- > 0) {
      if (idx[i] < i + n - k) {
        ++idx[i];
        for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        advanced = true;
        break;
      }
    }
    if (!advanced) return g;
  }
}

}  // namespace syz
