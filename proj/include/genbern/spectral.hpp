#pragma once

#include <vector>

#include "genbern/matrix.hpp"
#include "genbern/operators.hpp"

namespace genbern {

/// U_n^rho restricted to polynomials of degree <= n, in the monomial basis:
/// column m holds the coefficients of U_n^rho(e_m). Upper triangular.
template <Scalar T>
struct OperatorMatrix {
  OperatorSpec<T> spec;
  Matrix<T> entries;
};

template <Scalar T>
OperatorMatrix<T> operator_matrix(const OperatorSpec<T>& spec) {
  const int n = spec.n();
  const auto sz = static_cast<std::size_t>(n) + 1;
  OperatorMatrix<T> om{spec, Matrix<T>(sz, sz)};
  for (int m = 0; m <= n; ++m) {
    std::vector<T> table(sz);
    // Moments of order 0 and 1 are 1 and k/n whatever rho is; taking them
    // exactly keeps the reproduced columns e_0, e_1 free of rounding.
    for (int k = 0; k <= n; ++k)
      table[static_cast<std::size_t>(k)] = m == 0 ? T(1) : m == 1 ? from_ratio<T>(k, n) : moment_F(spec, k, m);
    if (m <= 1 && !is_exact_v<T>) {
      om.entries(static_cast<std::size_t>(m), static_cast<std::size_t>(m)) = T(1);
      continue;
    }
    const Poly<T> col = bernstein_combination<T>(table);
    for (int j = 0; j <= n; ++j) om.entries(static_cast<std::size_t>(j), static_cast<std::size_t>(m)) = col.coeff(j);
  }
  return om;
}

/// U_n^rho applied to p (deg p <= n) through the operator matrix.
template <Scalar T>
Poly<T> apply_matrix(const OperatorMatrix<T>& om, const Poly<T>& p) {
  const std::size_t sz = om.entries.cols();
  if (p.degree() >= static_cast<int>(sz)) throw usage_error("apply_matrix: degree exceeds n");
  std::vector<T> c(sz, T(0));
  for (std::size_t j = 0; j < sz; ++j) c[j] = p.coeff(static_cast<int>(j));
  return Poly<T>(om.entries * std::span<const T>(c));
}

/// Eigenvalues, monic eigenpolynomials and dual functionals of U_n^rho on Pi_n.
template <Scalar T>
struct EigenSystem {
  OperatorSpec<T> spec;
  std::vector<T> lambdas;
  std::vector<Poly<T>> eigenpolys;
  /// Row k applied to monomial coefficients of p in Pi_n gives mu_k(p).
  Matrix<T> dual_matrix;
  /// Column k holds the coefficients of eigenpolys[k] (unit upper triangular).
  Matrix<T> basis;
  OperatorMatrix<T> op;

  int n() const { return spec.n(); }

  /// Coordinates of p in the eigenpolynomial basis.
  std::vector<T> coordinates(const Poly<T>& p) const {
    const auto sz = static_cast<std::size_t>(n()) + 1;
    if (p.degree() >= static_cast<int>(sz)) throw usage_error("coordinates: degree exceeds n");
    std::vector<T> c(sz, T(0));
    for (std::size_t j = 0; j < sz; ++j) c[j] = p.coeff(static_cast<int>(j));
    return solve_upper<T>(basis, c);
  }

  /// sum_k weights[k] * eigenpolys[k]
  Poly<T> combine(std::span<const T> weights) const {
    Poly<T> out;
    for (std::size_t k = 0; k < weights.size(); ++k)
      if (weights[k] != T(0)) out += eigenpolys[k] * weights[k];
    return out;
  }
};

/// lambda_k is the k-th diagonal entry of the operator matrix. The eigenpoly
/// of index k solves (A - lambda_k I) v = 0 on the leading (k+1)-block with
/// v_k = 1. The double eigenvalue 1 (k = 0, 1) leaves the constant term of
/// p_1 free; it is set to zero, so p_0 = 1 and p_1 = x.
template <Scalar T>
EigenSystem<T> eigen_system(const OperatorSpec<T>& spec) {
  const int n = spec.n();
  const auto sz = static_cast<std::size_t>(n) + 1;
  EigenSystem<T> es{spec, {}, {}, Matrix<T>(sz, sz), Matrix<T>(sz, sz), operator_matrix(spec)};
  const Matrix<T>& a = es.op.entries;

  for (std::size_t k = 0; k < sz; ++k) es.lambdas.push_back(a(k, k));
  for (std::size_t j = 2; j < sz; ++j)
    for (std::size_t k = j + 1; k < sz; ++k)
      if (es.lambdas[j] == es.lambdas[k]) throw property_violation("eigen_system: repeated eigenvalue");

  for (std::size_t k = 0; k < sz; ++k) {
    std::vector<T> v(k + 1, T(0));
    v[k] = T(1);
    for (std::size_t ii = k; ii-- > 0;) {
      T acc(0);
      for (std::size_t j = ii + 1; j <= k; ++j) acc += a(ii, j) * v[j];
      const T diag = T(a(ii, ii) - es.lambdas[k]);
      bool degenerate = diag == T(0);
      if constexpr (!is_exact_v<T>) degenerate = std::fabs(diag) <= 1e-13;
      if (degenerate) {
        if constexpr (is_exact_v<T>) {
          if (acc != T(0)) throw property_violation("eigen_system: inconsistent eigenvector equation");
        } else {
          if (std::fabs(acc) > 1e-10) throw property_violation("eigen_system: inconsistent eigenvector equation");
        }
        v[ii] = T(0);
      } else {
        v[ii] = T(-acc / diag);
      }
    }
    for (std::size_t j = 0; j <= k; ++j) es.basis(j, k) = v[j];
    es.eigenpolys.emplace_back(std::move(v));
  }

  // Inverse of the unit upper-triangular basis matrix, column by column.
  for (std::size_t c = 0; c < sz; ++c) {
    std::vector<T> e(sz, T(0));
    e[c] = T(1);
    const auto col = solve_upper<T>(es.basis, e);
    for (std::size_t r = 0; r < sz; ++r) es.dual_matrix(r, c) = col[r];
  }
  return es;
}

/// mu_k(f): coordinate k of U f in the eigenbasis, divided by lambda_k.
template <Scalar T>
T dual_functional(const EigenSystem<T>& es, int k, const FunctionalTable<T>& table) {
  detail::check_index(k, es.n());
  const auto c = es.coordinates(apply_U(table));
  return T(c[static_cast<std::size_t>(k)] / es.lambdas[static_cast<std::size_t>(k)]);
}

template <Scalar T, class Source>
T dual_functional(const EigenSystem<T>& es, int k, const Source& f) {
  return dual_functional(es, k, functional_table(es.spec, f));
}

/// All dual functionals mu_0(f) .. mu_n(f).
template <Scalar T>
std::vector<T> dual_coordinates(const EigenSystem<T>& es, const FunctionalTable<T>& table) {
  auto c = es.coordinates(apply_U(table));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] /= es.lambdas[k];
  return c;
}

/// mu_k applied directly to a polynomial of degree <= n through the dual matrix.
template <Scalar T>
T dual_on_poly(const EigenSystem<T>& es, int k, const Poly<T>& p) {
  detail::check_index(k, es.n());
  if (p.degree() > es.n()) throw usage_error("dual_on_poly: degree exceeds n");
  T s(0);
  for (int j = 0; j <= p.degree(); ++j) s += es.dual_matrix(static_cast<std::size_t>(k), static_cast<std::size_t>(j)) * p.coeff(j);
  return s;
}

/// sum_k lambda_k mu_k(f) p_k
template <Scalar T>
Poly<T> spectral_apply(const EigenSystem<T>& es, const FunctionalTable<T>& table) {
  auto mu = dual_coordinates(es, table);
  for (std::size_t k = 0; k < mu.size(); ++k) mu[k] *= es.lambdas[k];
  return es.combine(mu);
}

template <Scalar T, class Source>
Poly<T> spectral_apply(const EigenSystem<T>& es, const Source& f) {
  return spectral_apply(es, functional_table(es.spec, f));
}

/// Closed form of the diagonal: [n! / ((n-k)! n^k)] * [(n rho)^k / (n rho)^(rising k)].
template <Scalar T>
T eigenvalue_closed_form(const OperatorSpec<T>& spec, int k) {
  detail::check_index(k, spec.n());
  const int n = spec.n();
  const T nrho = spec.n_rho();
  T r(1);
  for (int i = 0; i < k; ++i) r *= T(T(n - i) / T(n)) * T(nrho / T(nrho + T(i)));
  return r;
}

}  // namespace genbern
