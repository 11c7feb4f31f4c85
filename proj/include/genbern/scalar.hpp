#pragma once

#include <gmpxx.h>

#include <cmath>
#include <concepts>
#include <cstdlib>
#include <string>
#include <type_traits>

#include "genbern/errors.hpp"

namespace genbern {

/// Arbitrary-precision rational. gmpxx keeps results of arithmetic canonical
/// (lowest terms, positive denominator).
using Rational = mpq_class;

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static double from_int(long long v) { return static_cast<double>(v); }
  static double from_rational(const Rational& q) { return q.get_d(); }
  static double to_double(double v) { return v; }
  static double abs(double v) { return std::fabs(v); }
  static std::string name() { return "float"; }
};

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static Rational from_int(long long v) { return Rational(mpz_class(std::to_string(v))); }
  static Rational from_rational(const Rational& q) { return q; }
  static double to_double(const Rational& v) { return v.get_d(); }
  static Rational abs(const Rational& v) { return Rational(::abs(v)); }
  static std::string name() { return "exact"; }
};

/// The two scalar modes. Mixing them is a compile error: every operation is
/// instantiated for exactly one of these.
template <class T>
concept Scalar = std::same_as<T, double> || std::same_as<T, Rational>;

template <Scalar T>
inline constexpr bool is_exact_v = scalar_traits<T>::exact;

template <Scalar T>
T from_int(long long v) {
  return scalar_traits<T>::from_int(v);
}

template <Scalar T>
T from_ratio(long long num, long long den) {
  if (den == 0) throw usage_error("zero denominator");
  if constexpr (is_exact_v<T>) {
    Rational q(mpz_class(std::to_string(num)), mpz_class(std::to_string(den)));
    q.canonicalize();
    return q;
  } else {
    return static_cast<double>(num) / static_cast<double>(den);
  }
}

template <Scalar T>
T from_rational(const Rational& q) {
  return scalar_traits<T>::from_rational(q);
}

template <Scalar T>
double to_double(const T& v) {
  return scalar_traits<T>::to_double(v);
}

template <Scalar T>
T abs_value(const T& v) {
  return scalar_traits<T>::abs(v);
}

/// Maximum degree for which floating-point Vandermonde-type solves are
/// attempted. Overridden by the PALTANEA_DEGREE_CAP environment variable.
inline int degree_cap() {
  constexpr int kDefaultCap = 12;
  if (const char* env = std::getenv("PALTANEA_DEGREE_CAP")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 0) return static_cast<int>(v);
  }
  return kDefaultCap;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace genbern
