#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <string_view>

namespace hflat {

using Rational = mpq_class;

/// Parses "p", "p/q" or a finite decimal such as "-0.25" into an exact rational.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

/// Scalar-kind adaptor shared by the exact and floating-point code paths.
template <class S>
struct Scalar;

template <>
struct Scalar<Rational> {
  static Rational from_rational(const Rational& r) { return r; }
  static Rational from_int(long v) { return Rational(v); }
  static double to_double(const Rational& r) { return r.get_d(); }
  static bool is_zero(const Rational& r) { return sgn(r) == 0; }
  static double magnitude(const Rational& r) { return std::fabs(r.get_d()); }
  static constexpr bool exact = true;
};

template <>
struct Scalar<double> {
  static double from_rational(const Rational& r) { return r.get_d(); }
  static double from_int(long v) { return static_cast<double>(v); }
  static double to_double(double r) { return r; }
  static bool is_zero(double r) { return r == 0.0; }
  static double magnitude(double r) { return std::fabs(r); }
  static constexpr bool exact = false;
};

template <class S>
S from_rational(const Rational& r) {
  return Scalar<S>::from_rational(r);
}

template <class S>
double to_double(const S& v) {
  return Scalar<S>::to_double(v);
}

}  // namespace hflat
