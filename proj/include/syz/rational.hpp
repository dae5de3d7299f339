#pragma once

// Exact rational scalars and complex rational coefficients.
// All symbolic paths stay in exact arithmetic; doubles appear only at the
// numeric boundary (amoebas, residuals, figures).

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <stdexcept>
#include <string>

namespace syz {

using Int = long long;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct ParseError : std::runtime_error {
  std::size_t position;
  ParseError(std::size_t pos, const std::string& what)
      : std::runtime_error("parse error at position " + std::to_string(pos) + ": " + what),
        position(pos) {}
};

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

// Accepts "p", "p/q" and decimal forms like "-3.25". Exact in all cases.
inline Rational parse_rational(const std::string& text) {
  if (text.empty()) throw ParseError(0, "empty rational literal");
  std::size_t slash = text.find('/');
  if (slash != std::string::npos) {
    BigInt num(text.substr(0, slash));
    BigInt den(text.substr(slash + 1));
    if (den == 0) throw ParseError(slash + 1, "zero denominator");
    return Rational(num, den);
  }
  std::size_t dot = text.find('.');
  if (dot == std::string::npos) return Rational(BigInt(text));
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  std::size_t frac_len = text.size() - dot - 1;
  if (digits.empty() || digits == "-" || digits == "+")
    throw ParseError(0, "malformed decimal literal '" + text + "'");
  BigInt den = 1;
  for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
  return Rational(BigInt(digits), den);
}

inline std::string rational_to_string(const Rational& q) {
  std::string s = numerator(q).str();
  if (denominator(q) != 1) s += "/" + denominator(q).str();
  return s;
}

// Exact complex number with rational real and imaginary parts.
struct ComplexRational {
  Rational re, im;

  ComplexRational() = default;
  ComplexRational(Rational r) : re(std::move(r)) {}
  ComplexRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  ComplexRational(int r) : re(r) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  friend ComplexRational operator+(const ComplexRational& a, const ComplexRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ComplexRational operator-(const ComplexRational& a, const ComplexRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ComplexRational operator-(const ComplexRational& a) { return {-a.re, -a.im}; }
  friend ComplexRational operator*(const ComplexRational& a, const ComplexRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
    return a.re == b.re && a.im == b.im;
  }

  // |.|^2 stays exact; modulus itself is a double.
  Rational abs2() const { return re * re + im * im; }
  double abs() const { return std::sqrt(to_double(abs2())); }
};

inline std::string complex_to_string(const ComplexRational& c) {
  if (c.im == 0) return rational_to_string(c.re);
  if (c.re == 0) return rational_to_string(c.im) + "i";
  std::string s = rational_to_string(c.re);
  s += (c.im > 0) ? " + " : " - ";
  Rational a = c.im > 0 ? c.im : Rational(-c.im);
  s += rational_to_string(a) + "i";
  return s;
}

}  // namespace syz
