#pragma once

#include <cmath>
#include <vector>

#include "genbern/interpolation.hpp"

namespace genbern {

enum class BooleanRoute { Spectral, Iterative };

template <Scalar T>
struct BooleanSumResult {
  OperatorSpec<T> spec;
  int M;
  Poly<T> image;
};

namespace detail {
template <Scalar T>
T power(T base, int e) {
  T r(1);
  for (; e > 0; e >>= 1) {
    if (e & 1) r *= base;
    base *= base;
  }
  return r;
}
}  // namespace detail

/// (I - (I - U)^M) f.
///
/// Spectral: sum_k (1 - (1 - lambda_k)^M) mu_k(f) p_k.
/// Iterative: g_1 = U f, g_{i+1} = g_i + U f - U g_i, with U g_i taken
/// through the operator matrix (g_i lies in Pi_n).
template <Scalar T>
BooleanSumResult<T> boolean_sum_apply(const EigenSystem<T>& es, int M, const FunctionalTable<T>& table,
                                      BooleanRoute route) {
  if (M < 1) throw usage_error("boolean_sum_apply: M must be >= 1");
  Poly<T> image;
  if (route == BooleanRoute::Spectral) {
    auto mu = dual_coordinates(es, table);
    for (std::size_t k = 0; k < mu.size(); ++k) mu[k] *= T(T(1) - detail::power(T(T(1) - es.lambdas[k]), M));
    image = es.combine(mu);
  } else {
    const Poly<T> uf = apply_U(table);
    image = uf;
    for (int i = 1; i < M; ++i) image = image + uf - apply_matrix(es.op, image);
  }
  return {es.spec, M, std::move(image)};
}

template <Scalar T, class Source>
BooleanSumResult<T> boolean_sum_apply(const OperatorSpec<T>& spec, int M, const Source& f,
                                      BooleanRoute route = BooleanRoute::Spectral) {
  return boolean_sum_apply(eigen_system(spec), M, functional_table(spec, f), route);
}

/// Modewise form of (I-(I-U)^M) f - L f = -sum_k (1-lambda_k)^M mu_k(f) p_k.
template <Scalar T>
Poly<T> boolean_gap(const EigenSystem<T>& es, int M, std::span<const T> mu) {
  std::vector<T> w(mu.size());
  for (std::size_t k = 0; k < mu.size(); ++k) w[k] = T(-detail::power(T(T(1) - es.lambdas[k]), M) * mu[k]);
  return es.combine(w);
}

/// (1-lambda_n)^{-M} ((I-(I-U)^M) f - L f) + mu_n(f) p_n, evaluated modewise so
/// the k = n term cancels exactly:
/// -sum_{k<n} ((1-lambda_k)/(1-lambda_n))^M mu_k(f) p_k.
template <Scalar T>
Poly<T> boolean_scaled_gap(const EigenSystem<T>& es, int M, std::span<const T> mu) {
  const std::size_t n = static_cast<std::size_t>(es.n());
  const T denom = T(T(1) - es.lambdas[n]);
  std::vector<T> w(mu.size(), T(0));
  for (std::size_t k = 0; k < n; ++k) w[k] = T(-detail::power(T(T(T(1) - es.lambdas[k]) / denom), M) * mu[k]);
  return es.combine(w);
}

struct ConvergenceReport {
  OperatorSpec<double> spec;
  std::vector<int> M_values;
  std::vector<double> scaled_gap_norms;
  std::vector<double> raw_gap_norms;
  /// Scaled gaps re-evaluated in grid space (iterate minus L, then scaled)
  /// while (1-lambda_n)^{-M} <= 1e12; NaN beyond that point.
  std::vector<double> grid_space_scaled_gap_norms;
  double geometric_ratio_estimate = 0.0;
  double predicted_ratio = 0.0;  ///< (1-lambda_{n-1})/(1-lambda_n)
};

/// Gap study for M = 1..M_max on a 201-point grid.
inline ConvergenceReport boolean_limit_study(const OperatorSpec<double>& spec, const TargetFunction& f, int M_max,
                                             int grid = 201) {
  if (spec.n() < 2) throw usage_error("boolean_limit_study: requires n >= 2");
  if (M_max < 4) throw usage_error("boolean_limit_study: requires M_max >= 4");
  const auto es = eigen_system(spec);
  const auto table = functional_table(spec, f);
  const auto mu = dual_coordinates(es, table);
  const std::size_t n = static_cast<std::size_t>(spec.n());
  const double lam_n = es.lambdas[n];
  const double gap_n = 1.0 - lam_n;
  const Poly<double> lf = es.combine(mu);
  const Poly<double> limit_term = es.eigenpolys[n] * mu[n];

  ConvergenceReport rep{spec, {}, {}, {}, {}, 0.0, (1.0 - es.lambdas[n - 1]) / gap_n};
  Poly<double> iterate = apply_U(table);
  for (int M = 1; M <= M_max; ++M) {
    if (M > 1) iterate = iterate + apply_U(table) - apply_matrix(es.op, iterate);
    rep.M_values.push_back(M);
    rep.raw_gap_norms.push_back(grid_max_abs(boolean_gap(es, M, std::span<const double>(mu)), grid));
    rep.scaled_gap_norms.push_back(grid_max_abs(boolean_scaled_gap(es, M, std::span<const double>(mu)), grid));
    const double amplification = std::pow(gap_n, -M);
    if (amplification <= 1e12)
      rep.grid_space_scaled_gap_norms.push_back(grid_max_abs((iterate - lf) * amplification + limit_term, grid));
    else
      rep.grid_space_scaled_gap_norms.push_back(std::numeric_limits<double>::quiet_NaN());
  }
  // Quotient of the last two nonzero scaled gaps; identically vanishing
  // surviving modes give 0.
  const auto& s = rep.scaled_gap_norms;
  for (std::size_t i = s.size(); i-- > 1;) {
    if (s[i] > 0.0 && s[i - 1] > 0.0) {
      rep.geometric_ratio_estimate = s[i] / s[i - 1];
      break;
    }
  }
  return rep;
}

}  // namespace genbern
