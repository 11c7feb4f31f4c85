#pragma once

#include <algorithm>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "genbern/scalar.hpp"

namespace genbern {

/// Dense polynomial in the monomial basis: coeffs()[j] multiplies x^j.
///
/// Trailing zeros are trimmed after every operation, so the zero polynomial
/// has no coefficients and degree() == -1 (standing in for -infinity).
template <Scalar T>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<T> coeffs) : coeffs_(coeffs) { trim(); }

  static Poly constant(const T& c) { return Poly(std::vector<T>{c}); }

  /// e_j(x) = x^j
  static Poly monomial(int j, const T& c = T(1)) {
    std::vector<T> v(static_cast<std::size_t>(j) + 1, T(0));
    v.back() = c;
    return Poly(std::move(v));
  }

  /// Monic polynomial with the given roots.
  static Poly from_roots(std::span<const T> roots) {
    Poly p = constant(T(1));
    for (const T& r : roots) p = p * Poly{T(-r), T(1)};
    return p;
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<T>& coeffs() const { return coeffs_; }

  /// Coefficient of x^j; zero beyond the degree.
  T coeff(int j) const {
    if (j < 0 || j > degree()) return T(0);
    return coeffs_[static_cast<std::size_t>(j)];
  }

  T leading() const { return is_zero() ? T(0) : coeffs_.back(); }

  /// Horner evaluation.
  T operator()(const T& x) const {
    T acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  /// j-th formal derivative.
  Poly derivative(int j = 1) const {
    if (j < 0) throw usage_error("negative derivative order");
    if (j == 0) return *this;
    if (j > degree()) return Poly();
    std::vector<T> out(coeffs_.size() - static_cast<std::size_t>(j));
    for (std::size_t i = 0; i < out.size(); ++i) {
      T falling(1);
      for (int s = 0; s < j; ++s) falling *= T(static_cast<long>(i) + j - s);
      out[i] = coeffs_[i + static_cast<std::size_t>(j)] * falling;
    }
    return Poly(std::move(out));
  }

  Poly& operator+=(const Poly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), T(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), T(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }
  Poly& operator*=(const T& c) {
    for (T& v : coeffs_) v *= c;
    trim();
    return *this;
  }
  Poly& operator/=(const T& c) {
    for (T& v : coeffs_) v /= c;
    trim();
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) { return a *= T(-1); }
  friend Poly operator*(Poly a, const T& c) { return a *= c; }
  friend Poly operator*(const T& c, Poly a) { return a *= c; }
  friend Poly operator/(Poly a, const T& c) { return a /= c; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<T> out(a.coeffs_.size() + b.coeffs_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Poly(std::move(out));
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

  /// Euclidean division; returns {quotient, remainder}.
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) throw usage_error("polynomial division by zero");
    std::vector<T> rem = coeffs_;
    const int dd = d.degree();
    if (degree() < dd) return {Poly(), *this};
    std::vector<T> quot(static_cast<std::size_t>(degree() - dd + 1), T(0));
    const T lead = d.leading();
    for (int i = degree() - dd; i >= 0; --i) {
      T q = rem[static_cast<std::size_t>(i + dd)] / lead;
      quot[static_cast<std::size_t>(i)] = q;
      for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(i + j)] -= q * d.coeffs_[static_cast<std::size_t>(j)];
      rem[static_cast<std::size_t>(i + dd)] = T(0);
    }
    return {Poly(std::move(quot)), Poly(std::move(rem))};
  }

  /// Coefficientwise conversion (e.g. exact -> float).
  template <Scalar U>
  Poly<U> cast() const {
    std::vector<U> out;
    out.reserve(coeffs_.size());
    for (const T& c : coeffs_) {
      if constexpr (std::same_as<T, U>)
        out.push_back(c);
      else if constexpr (is_exact_v<T>)
        out.push_back(from_rational<U>(c));
      else
        out.push_back(U(c));
    }
    return Poly<U>(std::move(out));
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == T(0)) coeffs_.pop_back();
  }

  std::vector<T> coeffs_;
};

/// Largest coefficientwise absolute difference, as a double.
template <Scalar T>
double max_coeff_diff(const Poly<T>& a, const Poly<T>& b) {
  double m = 0.0;
  const int d = std::max(a.degree(), b.degree());
  for (int j = 0; j <= d; ++j) m = std::max(m, std::fabs(to_double<T>(T(a.coeff(j) - b.coeff(j)))));
  return m;
}

/// Max of |p(x)| over an equally spaced grid of `points` samples in [0,1].
template <Scalar T>
double grid_max_abs(const Poly<T>& p, int points = 201) {
  const Poly<double> pd = p.template cast<double>();
  double m = 0.0;
  for (int i = 0; i < points; ++i) {
    const double x = static_cast<double>(i) / (points - 1);
    m = std::max(m, std::fabs(pd(x)));
  }
  return m;
}

}  // namespace genbern
