#pragma once

#include <cmath>
#include <vector>

#include "genbern/numkernel.hpp"
#include "genbern/quadrature.hpp"
#include "genbern/target.hpp"

namespace genbern {

/// Degree n >= 1 and parameter rho > 0 of the operator U_n^rho.
template <Scalar T>
class OperatorSpec {
 public:
  OperatorSpec(int n, T rho) : n_(n), rho_(std::move(rho)) {
    if (n_ < 1) throw usage_error("OperatorSpec: n must be >= 1");
    if (!(rho_ > T(0))) throw usage_error("OperatorSpec: rho must be positive");
  }

  int n() const { return n_; }
  const T& rho() const { return rho_; }
  T n_rho() const { return T(T(n_) * rho_); }

  /// Quadrature order for non-polynomial targets; 0 selects the default.
  int quadrature_order = 0;

  int effective_quadrature_order() const {
    return quadrature_order > 0 ? quadrature_order : default_quadrature_order(n_);
  }

  template <Scalar U>
  OperatorSpec<U> cast() const {
    OperatorSpec<U> s(n_, from_rational<U>(Rational(rho_)));
    s.quadrature_order = quadrature_order;
    return s;
  }

 private:
  int n_;
  T rho_;
};

/// F_{n,k}^rho(f) for k = 0..n.
template <Scalar T>
struct FunctionalTable {
  OperatorSpec<T> spec;
  std::vector<T> values;
};

namespace detail {
inline void check_index(int k, int n) {
  if (k < 0 || k > n) throw usage_error("functional index k out of range");
}
}  // namespace detail

/// F_{n,k}^rho(e_m) = (k rho)^(rising m) / (n rho)^(rising m), formed as a
/// product of ratios so it cannot overflow.
template <Scalar T>
T moment_F(const OperatorSpec<T>& spec, int k, int m) {
  detail::check_index(k, spec.n());
  if (m < 0) throw usage_error("moment_F: negative moment order");
  const T krho = T(T(k) * spec.rho());
  const T nrho = spec.n_rho();
  T r(1);
  for (int i = 0; i < m; ++i) r *= T(T(krho + T(i)) / T(nrho + T(i)));
  return r;
}

/// F_{n,k}^rho applied to a polynomial, through the exact moments.
template <Scalar T>
T functional_F(const OperatorSpec<T>& spec, int k, const Poly<T>& p) {
  detail::check_index(k, spec.n());
  if (k == 0) return p(T(0));
  if (k == spec.n()) return p(T(1));
  T s(0);
  for (int j = 0; j <= p.degree(); ++j) s += p.coeff(j) * moment_F(spec, k, j);
  return s;
}

/// F_{n,k}^rho(f). Endpoints are point evaluations; interior functionals use
/// the exact moments when f is a known polynomial and Gauss-Jacobi quadrature
/// with weight t^(k rho - 1) (1-t)^((n-k) rho - 1) otherwise.
template <Scalar T>
T functional_F(const OperatorSpec<T>& spec, int k, const TargetFunction& f) {
  detail::check_index(k, spec.n());
  if (k == 0) return f.value<T>(T(0));
  if (k == spec.n()) return f.value<T>(T(1));
  if (f.has_exact()) return functional_F(spec, k, f.exact_poly()->template cast<T>());
  if constexpr (is_exact_v<T>) {
    throw usage_error("exact mode requires a polynomial target (" + f.name() + ")");
  } else {
    const double rho = spec.rho();
    const QuadratureRule rule =
        gauss_jacobi_rule(k * rho - 1.0, (spec.n() - k) * rho - 1.0, spec.effective_quadrature_order());
    return weighted_mean(rule, [&f](double t) { return f(t); });
  }
}

template <Scalar T, class Source>
FunctionalTable<T> functional_table(const OperatorSpec<T>& spec, const Source& f) {
  FunctionalTable<T> table{spec, {}};
  table.values.reserve(static_cast<std::size_t>(spec.n()) + 1);
  for (int k = 0; k <= spec.n(); ++k) table.values.push_back(functional_F(spec, k, f));
  return table;
}

/// U_n^rho f = sum_k F_{n,k}^rho(f) p_{n,k}.
template <Scalar T>
Poly<T> apply_U(const FunctionalTable<T>& table) {
  return bernstein_combination<T>(table.values);
}

template <Scalar T, class Source>
Poly<T> apply_U(const OperatorSpec<T>& spec, const Source& f) {
  return apply_U(functional_table(spec, f));
}

/// B_n f = sum_k f(k/n) p_{n,k}.
template <Scalar T>
Poly<T> apply_bernstein(int n, const TargetFunction& f) {
  if (n < 1) throw usage_error("apply_bernstein: n must be >= 1");
  std::vector<T> v;
  for (int k = 0; k <= n; ++k) v.push_back(f.value<T>(from_ratio<T>(k, n)));
  return bernstein_combination<T>(v);
}

template <Scalar T>
Poly<T> apply_bernstein(int n, const Poly<T>& p) {
  if (n < 1) throw usage_error("apply_bernstein: n must be >= 1");
  std::vector<T> v;
  for (int k = 0; k <= n; ++k) v.push_back(p(from_ratio<T>(k, n)));
  return bernstein_combination<T>(v);
}

/// Image of e_m under the Beta operator of parameter r:
/// (r x)^(rising m) / r^(rising m).
template <Scalar T>
Poly<T> beta_operator_monomial(const T& r, int m) {
  return rising_factorial_poly(r, m) / rising_factorial(r, m);
}

/// Beta operator on polynomials, exactly; preserves degree.
template <Scalar T>
Poly<T> beta_operator_poly(const T& r, const Poly<T>& p) {
  if (!(r > T(0))) throw usage_error("beta operator: r must be positive");
  Poly<T> out;
  for (int m = 0; m <= p.degree(); ++m)
    if (p.coeff(m) != T(0)) out += beta_operator_monomial(r, m) * p.coeff(m);
  return out;
}

/// The unique q of the same degree with beta_operator_poly(r, q) == p, by back
/// substitution on the upper-triangular monomial matrix (diagonal
/// r^m / r^(rising m), never zero).
template <Scalar T>
Poly<T> beta_operator_inverse_poly(const T& r, const Poly<T>& p) {
  if (!(r > T(0))) throw usage_error("beta operator: r must be positive");
  const int d = p.degree();
  if (d < 0) return Poly<T>();
  std::vector<Poly<T>> images;
  images.reserve(static_cast<std::size_t>(d) + 1);
  for (int m = 0; m <= d; ++m) images.push_back(beta_operator_monomial(r, m));
  std::vector<T> q(static_cast<std::size_t>(d) + 1, T(0));
  for (int i = d; i >= 0; --i) {
    T acc = p.coeff(i);
    for (int m = i + 1; m <= d; ++m) acc -= images[static_cast<std::size_t>(m)].coeff(i) * q[static_cast<std::size_t>(m)];
    q[static_cast<std::size_t>(i)] = acc / images[static_cast<std::size_t>(i)].coeff(i);
  }
  return Poly<T>(std::move(q));
}

/// Beta operator at a point: f(0), f(1) at the ends, otherwise the mean of f
/// under Beta(r x, r - r x). Polynomial targets go through the exact image.
template <Scalar T>
T beta_operator_point(const T& r, const TargetFunction& f, const T& x) {
  if (!(r > T(0))) throw usage_error("beta operator: r must be positive");
  if (x < T(0) || x > T(1)) throw usage_error("beta operator: x outside [0,1]");
  if (x == T(0)) return f.value<T>(T(0));
  if (x == T(1)) return f.value<T>(T(1));
  if (f.has_exact()) return beta_operator_poly(r, f.exact_poly()->template cast<T>())(x);
  if constexpr (is_exact_v<T>) {
    throw usage_error("exact mode requires a polynomial target (" + f.name() + ")");
  } else {
    const QuadratureRule rule = gauss_jacobi_rule(r * x - 1.0, r - r * x - 1.0, 64);
    return weighted_mean(rule, [&f](double t) { return f(t); });
  }
}

}  // namespace genbern
