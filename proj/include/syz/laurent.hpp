#pragma once

// Laurent polynomials over exact complex rationals, the expression-grammar
// parser, Newton polytopes and tropicalization (max-plus, lower-hull
// convention).

#include <cctype>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "syz/polytope.hpp"
#include "syz/rational.hpp"

namespace syz {

struct LaurentPolynomial {
  int dim = 0;
  std::map<ExponentVector, ComplexRational> terms;  // no zero coefficients

  void add_term(const ExponentVector& e, const ComplexRational& c) {
    auto it = terms.find(e);
    if (it == terms.end()) {
      if (!c.is_zero()) terms.emplace(e, c);
      return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) terms.erase(it);
  }
  bool is_zero() const { return terms.empty(); }
};

inline LaurentPolynomial operator*(const LaurentPolynomial& f, const LaurentPolynomial& g) {
  if (f.dim != g.dim) throw std::invalid_argument("laurent multiply: dimension mismatch");
  LaurentPolynomial h;
  h.dim = f.dim;
  for (const auto& [ea, ca] : f.terms)
    for (const auto& [eb, cb] : g.terms) {
      ExponentVector e(f.dim);
      for (int i = 0; i < f.dim; ++i) e[i] = ea[i] + eb[i];
      h.add_term(e, ca * cb);
    }
  return h;
}

inline LaurentPolynomial operator+(const LaurentPolynomial& f, const LaurentPolynomial& g) {
  if (f.dim != g.dim) throw std::invalid_argument("laurent add: dimension mismatch");
  LaurentPolynomial h = f;
  for (const auto& [e, c] : g.terms) h.add_term(e, c);
  return h;
}

inline bool operator==(const LaurentPolynomial& f, const LaurentPolynomial& g) {
  return f.dim == g.dim && f.terms == g.terms;
}

namespace detail {

// Terms joined by +/-; a term is an optional coefficient (decimal rational or
// fraction, 'i'-suffixed for imaginary) times optional variable factors
// z<k>[^e]; '*' separators are optional.
struct LaurentParser {
  const std::string& text;
  int dim;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool peek_is(char c) {
    skip_ws();
    return pos < text.size() && text[pos] == c;
  }
  bool starts_number() {
    skip_ws();
    if (pos >= text.size()) return false;
    char c = text[pos];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.';
  }

  std::string read_number() {
    skip_ws();
    std::size_t start = pos;
    bool saw_digit = false, saw_dot = false, saw_slash = false;
    while (pos < text.size()) {
      char c = text[pos];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        saw_digit = true;
        ++pos;
      } else if (c == '.' && !saw_dot && !saw_slash) {
        saw_dot = true;
        ++pos;
      } else if (c == '/' && saw_digit && !saw_slash && !saw_dot) {
        saw_slash = true;
        ++pos;
      } else {
        break;
      }
    }
    if (!saw_digit) throw ParseError(start, "expected a number");
    return text.substr(start, pos - start);
  }

  Int read_int() {
    skip_ws();
    std::size_t start = pos;
    bool neg = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
      neg = text[pos] == '-';
      ++pos;
    }
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      throw ParseError(start, "expected an integer exponent");
    Int v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + (text[pos] - '0');
      ++pos;
    }
    return neg ? -v : v;
  }

  // One variable factor z<k>[^e]; k is 1-based.
  void read_factor(ExponentVector& e) {
    skip_ws();
    std::size_t start = pos;
    ++pos;  // consume 'z'
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      throw ParseError(pos, "expected a variable index after 'z'");
    Int k = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      k = k * 10 + (text[pos] - '0');
      ++pos;
    }
    if (k < 1 || k > dim)
      throw ParseError(start, "dimension mismatch: variable z" + std::to_string(k) +
                                  " with dim = " + std::to_string(dim));
    Int power = 1;
    skip_ws();
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      power = read_int();
    }
    e[k - 1] += power;
  }

  void read_term(LaurentPolynomial& out, bool negate) {
    ComplexRational coeff(Rational(1));
    bool have_coeff = false;
    skip_ws();
    if (starts_number()) {
      Rational v = parse_rational(read_number());
      if (pos < text.size() && text[pos] == 'i') {
        ++pos;
        coeff = ComplexRational(Rational(0), v);
      } else {
        coeff = ComplexRational(v);
      }
      have_coeff = true;
    } else if (pos < text.size() && text[pos] == 'i') {
      ++pos;
      coeff = ComplexRational(Rational(0), Rational(1));
      have_coeff = true;
    }
    if (have_coeff && peek_is('*')) ++pos;
    ExponentVector e(dim, 0);
    bool have_factor = false;
    while (true) {
      skip_ws();
      if (pos < text.size() && text[pos] == 'z') {
        read_factor(e);
        have_factor = true;
        if (peek_is('*')) ++pos;
        continue;
      }
      break;
    }
    if (!have_coeff && !have_factor) throw ParseError(pos, "expected a term");
    if (negate) coeff = -coeff;
    out.add_term(e, coeff);
  }

  LaurentPolynomial run() {
    LaurentPolynomial out;
    out.dim = dim;
    skip_ws();
    bool negate = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      negate = text[pos] == '-';
      ++pos;
    }
    read_term(out, negate);
    while (true) {
      skip_ws();
      if (pos >= text.size()) break;
      char c = text[pos];
      if (c != '+' && c != '-') throw ParseError(pos, std::string("unexpected character '") + c + "'");
      ++pos;
      read_term(out, c == '-');
    }
    return out;
  }
};

}  // namespace detail

inline LaurentPolynomial parse_laurent(const std::string& text, int dim) {
  if (dim < 1) throw std::invalid_argument("parse_laurent: dim must be >= 1");
  detail::LaurentParser p{text, dim};
  return p.run();
}

// Inverse of parse_laurent up to term-map equality.
inline std::string to_expression(const LaurentPolynomial& f) {
  if (f.terms.empty()) return "0";
  struct Piece {
    ExponentVector e;
    Rational v;
    bool imaginary;
  };
  std::vector<Piece> pieces;
  for (const auto& [e, c] : f.terms) {
    if (c.re != 0) pieces.push_back({e, c.re, false});
    if (c.im != 0) pieces.push_back({e, c.im, true});
  }
  std::string s;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& p = pieces[i];
    Rational a = p.v < 0 ? Rational(-p.v) : p.v;
    if (i == 0) {
      if (p.v < 0) s += "-";
    } else {
      s += p.v < 0 ? " - " : " + ";
    }
    std::string mono;
    for (std::size_t k = 0; k < p.e.size(); ++k) {
      if (p.e[k] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "z" + std::to_string(k + 1);
      if (p.e[k] != 1) mono += "^" + std::to_string(p.e[k]);
    }
    std::string coeff;
    if (a != 1 || p.imaginary || mono.empty()) {
      coeff = rational_to_string(a);
      if (p.imaginary) coeff += "i";
    }
    if (p.imaginary && a == 1) coeff = "i";
    if (coeff.empty()) {
      s += mono;
    } else if (mono.empty()) {
      s += coeff;
    } else {
      s += coeff + "*" + mono;
    }
  }
  return s;
}

inline LatticePolytope newton_polytope(const LaurentPolynomial& f) {
  if (f.is_zero()) throw InvalidInput("newton_polytope: zero polynomial");
  std::vector<ExponentVector> support;
  for (const auto& [e, c] : f.terms) support.push_back(e);
  return lattice_polytope(f.dim, support);
}

// Piecewise-linear max of <a, x> - h(a) over a finite support.
struct TropicalFunction {
  int dim = 0;
  std::map<ExponentVector, Rational> heights;

  double eval(const std::vector<double>& x) const {
    bool first = true;
    double best = 0;
    for (const auto& [a, h] : heights) {
      double v = -to_double(h);
      for (int i = 0; i < dim; ++i) v += static_cast<double>(a[i]) * x[i];
      if (first || v > best) {
        best = v;
        first = false;
      }
    }
    return best;
  }

  Rational eval_exact(const std::vector<Rational>& x) const {
    bool first = true;
    Rational best = 0;
    for (const auto& [a, h] : heights) {
      Rational v = -h;
      for (int i = 0; i < dim; ++i) v += Rational(a[i]) * x[i];
      if (first || v > best) {
        best = v;
        first = false;
      }
    }
    return best;
  }

  // Exponents attaining the max at x (the "tie set"; size >= 2 on the curve).
  std::vector<ExponentVector> argmax_exact(const std::vector<Rational>& x) const {
    Rational best = eval_exact(x);
    std::vector<ExponentVector> out;
    for (const auto& [a, h] : heights) {
      Rational v = -h;
      for (int i = 0; i < dim; ++i) v += Rational(a[i]) * x[i];
      if (v == best) out.push_back(a);
    }
    return out;
  }
};

using Lifting = std::map<ExponentVector, Rational>;

inline TropicalFunction tropicalize(const LaurentPolynomial& f, const Lifting& h = {}) {
  if (f.is_zero()) throw InvalidInput("tropicalize: zero polynomial");
  for (const auto& [a, v] : h)
    if (!f.terms.count(a))
      throw InvalidInput("tropicalize: lifting key " + exp_to_string(a) + " is not an exponent of f");
  TropicalFunction t;
  t.dim = f.dim;
  for (const auto& [a, c] : f.terms) {
    auto it = h.find(a);
    t.heights[a] = it == h.end() ? Rational(0) : it->second;
  }
  return t;
}

// Floating-point view of the terms, for numeric evaluation.
struct NumericTerm {
  ExponentVector exp;
  std::complex<double> coeff;
};

inline std::complex<double> to_complex(const ComplexRational& c) {
  return {to_double(c.re), to_double(c.im)};
}

inline std::vector<NumericTerm> numeric_terms(const LaurentPolynomial& f) {
  std::vector<NumericTerm> out;
  out.reserve(f.terms.size());
  for (const auto& [e, c] : f.terms) out.push_back({e, to_complex(c)});
  return out;
}

inline std::complex<double> ipow(std::complex<double> z, Int e) {
  if (e < 0) return 1.0 / ipow(z, -e);
  std::complex<double> r = 1.0;
  while (e > 0) {
    if (e & 1) r *= z;
    z *= z;
    e >>= 1;
  }
  return r;
}

inline std::complex<double> eval_at(const LaurentPolynomial& f,
                                    const std::vector<std::complex<double>>& z) {
  if (static_cast<int>(z.size()) != f.dim) throw InvalidInput("eval_at: wrong number of coordinates");
  std::complex<double> sum = 0.0;
  for (const auto& [e, c] : f.terms) {
    std::complex<double> m = to_complex(c);
    for (int i = 0; i < f.dim; ++i) m *= ipow(z[i], e[i]);
    sum += m;
  }
  return sum;
}

}  // namespace syz
