#pragma once

#include <vector>

#include "genbern/interpolation.hpp"

namespace genbern {

/// deltas[j][k] = Delta^j F_{n,k}(f), j = 0..n, k = 0..n-j.
template <Scalar T>
struct DifferenceTable {
  FunctionalTable<T> base;
  std::vector<std::vector<T>> deltas;
};

template <Scalar T>
DifferenceTable<T> forward_differences(const FunctionalTable<T>& table) {
  DifferenceTable<T> dt{table, {table.values}};
  while (dt.deltas.back().size() > 1) {
    const auto& prev = dt.deltas.back();
    std::vector<T> next(prev.size() - 1);
    for (std::size_t k = 0; k < next.size(); ++k) next[k] = T(prev[k + 1] - prev[k]);
    dt.deltas.push_back(std::move(next));
  }
  return dt;
}

/// n (n-1) ... (n-j+1)
template <Scalar T>
T falling_factor(int n, int j) {
  T r(1);
  for (int i = 0; i < j; ++i) r *= T(n - i);
  return r;
}

/// j-th derivative of U_n^rho f as n(n-1)...(n-j+1) sum_k p_{n-j,k} Delta^j F_{n,k}(f).
template <Scalar T>
Poly<T> derivative_via_differences(const DifferenceTable<T>& dt, int j) {
  const int n = dt.base.spec.n();
  if (j < 0 || j > n) throw usage_error("derivative_via_differences: need 0 <= j <= n");
  return bernstein_combination<T>(dt.deltas[static_cast<std::size_t>(j)]) * falling_factor<T>(n, j);
}

template <Scalar T, class Source>
Poly<T> derivative_via_differences(const OperatorSpec<T>& spec, const Source& f, int j) {
  return derivative_via_differences(forward_differences(functional_table(spec, f)), j);
}

/// (j!/n^j) [k/n, ..., (k+j)/n; Phi_n], with Phi_n evaluated at the nodes.
template <Scalar T>
T divdiff_bridge(const FunctionalTable<T>& table, const Poly<T>& phi, int j, int k) {
  const int n = table.spec.n();
  if (j < 0 || k < 0 || k > n - j) throw usage_error("divdiff_bridge: need 0 <= k <= n - j");
  std::vector<T> xs, vs;
  for (int i = k; i <= k + j; ++i) {
    xs.push_back(from_ratio<T>(i, n));
    vs.push_back(phi(xs.back()));
  }
  const T dd = classical_divided_difference(NodeSet<T>(std::move(xs)), std::span<const T>(vs));
  T scale(1);
  for (int i = 1; i <= j; ++i) scale *= T(T(i) / T(n));
  return T(scale * dd);
}

template <Scalar T, class Source>
T divdiff_bridge(const OperatorSpec<T>& spec, const Source& f, int j, int k) {
  const auto table = functional_table(spec, f);
  return divdiff_bridge(table, phi_interpolant(table), j, k);
}

/// Taylor form at 0: coefficient of e_k is C(n,k) Delta^k F_{n,0}(f).
template <Scalar T>
Poly<T> taylor_coefficients(const DifferenceTable<T>& dt) {
  const int n = dt.base.spec.n();
  std::vector<T> c(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) c[static_cast<std::size_t>(k)] = T(binomial_as<T>(n, k) * dt.deltas[static_cast<std::size_t>(k)][0]);
  return Poly<T>(std::move(c));
}

template <Scalar T, class Source>
Poly<T> taylor_coefficients(const OperatorSpec<T>& spec, const Source& f) {
  return taylor_coefficients(forward_differences(functional_table(spec, f)));
}

}  // namespace genbern
