#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "genbern/roots.hpp"
#include "genbern/spectral.hpp"

namespace genbern {

// ---------------------------------------------------------------------------
// Classical interpolation at arbitrary and equally spaced nodes.

/// Newton divided-difference coefficients [x_0], [x_0,x_1], ..., [x_0..x_m].
template <Scalar T>
std::vector<T> newton_coefficients(const NodeSet<T>& nodes, std::span<const T> values) {
  if (nodes.size() != values.size() || values.empty())
    throw usage_error("divided difference: need as many values as nodes (at least one)");
  std::vector<T> d(values.begin(), values.end());
  const std::size_t m = d.size();
  for (std::size_t level = 1; level < m; ++level)
    for (std::size_t i = m - 1; i >= level; --i) d[i] = T((d[i] - d[i - 1]) / T(nodes[i] - nodes[i - level]));
  return d;
}

/// [x_0, ..., x_m; f] by the Newton recurrence.
template <Scalar T>
T classical_divided_difference(const NodeSet<T>& nodes, std::span<const T> values) {
  return newton_coefficients(nodes, values).back();
}

/// Monomial form of the Newton interpolant through (nodes, values).
template <Scalar T>
Poly<T> newton_interpolant(const NodeSet<T>& nodes, std::span<const T> values) {
  const auto d = newton_coefficients(nodes, values);
  Poly<T> p;
  for (std::size_t i = d.size(); i-- > 0;) p = p * Poly<T>{T(-nodes[i]), T(1)} + Poly<T>::constant(d[i]);
  return p;
}

/// Classical Lagrange interpolant at 0, 1/n, ..., 1.
template <Scalar T>
Poly<T> lagrange_classical(int n, const TargetFunction& f) {
  const auto nodes = NodeSet<T>::equally_spaced(n);
  std::vector<T> v;
  for (const T& x : nodes) v.push_back(f.value<T>(x));
  return newton_interpolant(nodes, std::span<const T>(v));
}

template <Scalar T>
Poly<T> lagrange_classical(int n, const Poly<T>& p) {
  const auto nodes = NodeSet<T>::equally_spaced(n);
  std::vector<T> v;
  for (const T& x : nodes) v.push_back(p(x));
  return newton_interpolant(nodes, std::span<const T>(v));
}

/// Phi_n: the polynomial of degree <= n through (k/n, F_{n,k}(f)).
template <Scalar T>
Poly<T> phi_interpolant(const FunctionalTable<T>& table) {
  return newton_interpolant(NodeSet<T>::equally_spaced(table.spec.n()), std::span<const T>(table.values));
}

// ---------------------------------------------------------------------------
// The Lagrange-type operator L_n^rho = (U_n^rho)^{-1} U_n^rho.

enum class LRoute { InverseOperator, LinearSystem, Spectral };

template <Scalar T>
struct InterpolationResult {
  OperatorSpec<T> spec;
  Poly<T> interpolant;
  FunctionalTable<T> table;
  LRoute route;
};

/// (n+1)x(n+1) matrix of moments F_{n,k}(e_m), row k, column m.
template <Scalar T>
Matrix<T> moment_matrix(const OperatorSpec<T>& spec) {
  const auto sz = static_cast<std::size_t>(spec.n()) + 1;
  Matrix<T> m(sz, sz);
  for (std::size_t k = 0; k < sz; ++k)
    for (std::size_t j = 0; j < sz; ++j) m(k, j) = moment_F(spec, static_cast<int>(k), static_cast<int>(j));
  return m;
}

template <Scalar T>
Poly<T> solve_moment_system(const FunctionalTable<T>& table) {
  if constexpr (!is_exact_v<T>) {
    if (table.spec.n() > degree_cap())
      throw numerical_guard("moment system refused in float mode: n = " + std::to_string(table.spec.n()) +
                            " exceeds degree cap " + std::to_string(degree_cap()));
    // The moment matrix is badly conditioned; solve over the rationals from the
    // binary values and round once.
    std::vector<Rational> rhs;
    rhs.reserve(table.values.size());
    for (double v : table.values) rhs.emplace_back(v);
    const auto q = solve_dense<Rational>(moment_matrix(table.spec.template cast<Rational>()), std::move(rhs));
    std::vector<double> c;
    c.reserve(q.size());
    for (const auto& v : q) c.push_back(v.get_d());
    return Poly<T>(std::move(c));
  } else {
    return Poly<T>(solve_dense<T>(moment_matrix(table.spec), table.values));
  }
}

template <Scalar T>
InterpolationResult<T> apply_L(const FunctionalTable<T>& table, LRoute route,
                               const EigenSystem<T>* eigen = nullptr) {
  const OperatorSpec<T>& spec = table.spec;
  if constexpr (!is_exact_v<T>) {
    // Within the degree cap every route runs over the rationals from the binary
    // inputs and rounds once; in double the monomial coefficients lose ~1e-9 by n = 8.
    if (spec.n() <= degree_cap()) {
      FunctionalTable<Rational> exact{spec.template cast<Rational>(), {}};
      exact.values.reserve(table.values.size());
      for (double v : table.values) exact.values.emplace_back(v);
      const auto r = apply_L(exact, route);
      std::vector<double> c(static_cast<std::size_t>(spec.n()) + 1, 0.0);
      for (std::size_t j = 0; j < c.size(); ++j) c[j] = r.interpolant.coeff(static_cast<int>(j)).get_d();
      return {spec, Poly<T>(std::move(c)), table, route};
    }
  }
  Poly<T> p;
  switch (route) {
    case LRoute::InverseOperator: {
      const auto om = eigen ? eigen->op : operator_matrix(spec);
      const Poly<T> u = apply_U(table);
      std::vector<T> rhs(static_cast<std::size_t>(spec.n()) + 1, T(0));
      for (std::size_t j = 0; j < rhs.size(); ++j) rhs[j] = u.coeff(static_cast<int>(j));
      p = Poly<T>(solve_upper<T>(om.entries, rhs));
      break;
    }
    case LRoute::LinearSystem:
      p = solve_moment_system(table);
      break;
    case LRoute::Spectral: {
      std::optional<EigenSystem<T>> local;
      if (!eigen) eigen = &local.emplace(eigen_system(spec));
      p = eigen->combine(dual_coordinates(*eigen, table));
      break;
    }
  }
  return {spec, std::move(p), table, route};
}

template <Scalar T, class Source>
InterpolationResult<T> apply_L(const OperatorSpec<T>& spec, const Source& f, LRoute route = LRoute::InverseOperator,
                               const EigenSystem<T>* eigen = nullptr) {
  return apply_L(functional_table(spec, f), route, eigen);
}

// ---------------------------------------------------------------------------
// Generalized divided difference [F_{n,0}, ..., F_{n,n}; f].

enum class DivDiffRoute { Determinant, Recurrence, Spectral };

/// (n rho)^(rising n) / (n rho)^n, as prod (1 + i/(n rho)); no overflow for
/// large n rho.
template <Scalar T>
T divdiff_scale(const OperatorSpec<T>& spec) {
  const T nrho = spec.n_rho();
  T r(1);
  for (int i = 1; i < spec.n(); ++i) r *= T(T(1) + T(T(i) / nrho));
  return r;
}

template <Scalar T>
T gen_divided_difference(const FunctionalTable<T>& table, DivDiffRoute route, const EigenSystem<T>* eigen = nullptr) {
  const int n = table.spec.n();
  switch (route) {
    case DivDiffRoute::Determinant:
      return solve_moment_system(table).coeff(n);
    case DivDiffRoute::Recurrence: {
      // Phi_n interpolates the table at k/n, so its divided difference at
      // those nodes is the Newton leading coefficient of the table itself.
      const T dd = classical_divided_difference(NodeSet<T>::equally_spaced(n), std::span<const T>(table.values));
      return T(divdiff_scale(table.spec) * dd);
    }
    case DivDiffRoute::Spectral: {
      if (eigen) return dual_functional(*eigen, n, table);
      return dual_functional(eigen_system(table.spec), n, table);
    }
  }
  throw usage_error("unknown divided-difference route");
}

template <Scalar T, class Source>
T gen_divided_difference(const OperatorSpec<T>& spec, const Source& f, DivDiffRoute route = DivDiffRoute::Recurrence,
                         const EigenSystem<T>* eigen = nullptr) {
  return gen_divided_difference(functional_table(spec, f), route, eigen);
}

// ---------------------------------------------------------------------------
// Kernel polynomial, fundamental polynomials and root certificates.

/// u_{n+1} = e_{n+1} - L_n^rho e_{n+1}; monic of degree n+1, annihilated by L.
template <Scalar T>
Poly<T> monic_kernel_poly(const OperatorSpec<T>& spec) {
  const Poly<T> e = Poly<T>::monomial(spec.n() + 1);
  return e - apply_L(spec, e, LRoute::InverseOperator).interpolant;
}

/// x (x-1) (x-1/n) ... (x-(n-1)/n): the kernel polynomial of classical
/// interpolation at the equally spaced nodes.
template <Scalar T>
Poly<T> equispaced_node_poly(int n) {
  const auto nodes = NodeSet<T>::equally_spaced(n);
  return Poly<T>::from_roots(nodes.values());
}

template <Scalar T>
struct RootCertificate {
  Poly<T> poly;
  std::vector<RootInterval<T>> intervals;
  NodeSet<T> roots;  ///< interval midpoints
};

/// Isolates the roots of p in [0,1] and requires at least `expected` distinct
/// ones; a shortfall raises property_violation.
template <Scalar T>
RootCertificate<T> certify_roots(const Poly<T>& p, int expected) {
  auto iv = isolate_real_roots(p, T(0), T(1));
  if (static_cast<int>(iv.size()) < expected)
    throw property_violation("root certificate: found " + std::to_string(iv.size()) + " distinct roots in [0,1], expected " +
                             std::to_string(expected));
  std::vector<T> mids;
  for (const auto& r : iv) mids.push_back(r.midpoint());
  return {p, std::move(iv), NodeSet<T>(std::move(mids))};
}

template <Scalar T>
RootCertificate<T> kernel_root_certificate(const OperatorSpec<T>& spec) {
  if constexpr (!is_exact_v<T>) {
    if (spec.n() > degree_cap()) throw numerical_guard("kernel_root_certificate: n exceeds degree cap in float mode");
  }
  return certify_roots(monic_kernel_poly(spec), spec.n() + 1);
}

/// Classical fundamental Lagrange polynomials at k/n.
template <Scalar T>
std::vector<Poly<T>> classical_fundamental_polys(int n) {
  const auto nodes = NodeSet<T>::equally_spaced(n);
  std::vector<Poly<T>> out;
  for (int k = 0; k <= n; ++k) {
    std::vector<T> v(static_cast<std::size_t>(n) + 1, T(0));
    v[static_cast<std::size_t>(k)] = T(1);
    out.push_back(newton_interpolant(nodes, std::span<const T>(v)));
  }
  return out;
}

template <Scalar T>
struct FundamentalPolys {
  std::vector<Poly<T>> polys;
  std::vector<RootCertificate<T>> certificates;
};

/// l_{n,k}^rho = (Beta operator of parameter n rho)^{-1} applied to l_{n,k};
/// each one is certified to have n distinct roots in [0,1].
template <Scalar T>
FundamentalPolys<T> fundamental_polys(const OperatorSpec<T>& spec) {
  FundamentalPolys<T> out;
  const T r = spec.n_rho();
  for (const auto& l : classical_fundamental_polys<T>(spec.n())) {
    out.polys.push_back(beta_operator_inverse_poly(r, l));
    out.certificates.push_back(certify_roots(out.polys.back(), spec.n()));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Mean-value diagnostics (float).

struct MeanValueReport {
  double divdiff = 0.0;
  double derivative_min = 0.0;  ///< min of f^(n)/n! on the grid
  double derivative_max = 0.0;
  bool contained = false;
  std::optional<std::pair<double, double>> xi_bracket;
};

inline double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

/// Compares the generalized divided difference against the range of
/// f^(n)/n! sampled on `grid` points of [0,1].
inline MeanValueReport mean_value_check(const OperatorSpec<double>& spec, const TargetFunction& f, int grid = 1001) {
  if (!f.has_derivative()) throw usage_error("mean_value_check: missing derivative oracle");
  const int n = spec.n();
  MeanValueReport rep;
  rep.divdiff = gen_divided_difference(spec, f, DivDiffRoute::Recurrence);
  const double nf = factorial(n);
  rep.derivative_min = std::numeric_limits<double>::infinity();
  rep.derivative_max = -std::numeric_limits<double>::infinity();
  double prev_x = 0.0, prev_g = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double x = static_cast<double>(i) / (grid - 1);
    const double g = f.derivative(n, x) / nf;
    rep.derivative_min = std::min(rep.derivative_min, g);
    rep.derivative_max = std::max(rep.derivative_max, g);
    if (i > 0 && !rep.xi_bracket) {
      const double a = prev_g - rep.divdiff, b = g - rep.divdiff;
      if (a == 0.0)
        rep.xi_bracket = std::pair{prev_x, prev_x};
      else if (b == 0.0)
        rep.xi_bracket = std::pair{x, x};
      else if ((a < 0) != (b < 0))
        rep.xi_bracket = std::pair{prev_x, x};
    }
    prev_x = x;
    prev_g = g;
  }
  // Slack for the rounding in the divided difference itself; without it a
  // constant f^(n) (f = e_n) fails on the last bit.
  const double slack = 1e-10 * std::max(1.0, std::max(std::fabs(rep.derivative_min), std::fabs(rep.derivative_max)));
  rep.contained = rep.divdiff >= rep.derivative_min - slack && rep.divdiff <= rep.derivative_max + slack;
  return rep;
}

struct RemainderAnalysis {
  OperatorSpec<double> spec;
  std::vector<double> roots;  ///< increasing; includes 0 and 1 when they are roots
  Poly<double> omega;         ///< prod (t - roots[i])
  Poly<double> interpolant;   ///< L_n^rho f
  bool endpoints_are_roots = false;
  bool conclusive = false;  ///< at least n+1 roots located
  double ratio_min = 0.0;   ///< range of R/omega over off-root samples
  double ratio_max = 0.0;
  std::optional<std::pair<double, double>> derivative_range;  ///< f^(n+1)/(n+1)! on 1001 points
  bool contained = false;
};

/// Locates the roots of R = f - L_n^rho f by grid scan plus bisection.
/// Fewer than n+1 roots at the given grid is reported (conclusive == false),
/// not thrown: roots may cluster below the grid resolution.
inline RemainderAnalysis remainder_analysis(const OperatorSpec<double>& spec, const TargetFunction& f,
                                            int grid_size = 1024) {
  if (grid_size < 64) throw usage_error("remainder_analysis: grid_size must be >= 64");
  if (f.has_exact() && f.exact_poly()->degree() <= spec.n())
    throw usage_error("remainder_analysis: remainder vanishes identically for polynomials of degree <= n");
  const int n = spec.n();
  RemainderAnalysis ra{spec, {}, {}, {}, false, false, 0.0, 0.0, std::nullopt, false};
  ra.interpolant = apply_L(spec, f).interpolant;
  const Poly<double>& lf = ra.interpolant;
  auto rem = [&](double x) { return f.value<double>(x) - lf(x); };

  double scale = 1.0;
  for (int i = 0; i <= grid_size; ++i) scale = std::max(scale, std::fabs(f(static_cast<double>(i) / grid_size)));
  const double zero_tol = 1e-9 * scale;
  const bool r0 = std::fabs(rem(0.0)) <= zero_tol;
  const bool r1 = std::fabs(rem(1.0)) <= zero_tol;
  ra.endpoints_are_roots = r0 && r1;
  if (r0) ra.roots.push_back(0.0);

  double prev_x = 1.0 / grid_size;
  double prev_v = rem(prev_x);
  for (int i = 2; i < grid_size; ++i) {
    const double x = static_cast<double>(i) / grid_size;
    const double v = rem(x);
    if (v == 0.0) {
      ra.roots.push_back(x);
    } else if (prev_v != 0.0 && (prev_v < 0) != (v < 0)) {
      double lo = prev_x, hi = x, flo = prev_v;
      for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = rem(mid);
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((fm < 0) == (flo < 0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      ra.roots.push_back(0.5 * (lo + hi));
    }
    prev_x = x;
    prev_v = v;
  }
  if (r1) ra.roots.push_back(1.0);
  ra.conclusive = ra.endpoints_are_roots && static_cast<int>(ra.roots.size()) >= n + 1;
  ra.omega = Poly<double>::from_roots(ra.roots);

  double omega_scale = 0.0;
  for (int i = 0; i <= grid_size; ++i) omega_scale = std::max(omega_scale, std::fabs(ra.omega(static_cast<double>(i) / grid_size)));
  ra.ratio_min = std::numeric_limits<double>::infinity();
  ra.ratio_max = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= grid_size; ++i) {
    const double x = (i + 0.5) / (grid_size + 1);
    const double w = ra.omega(x);
    if (std::fabs(w) < 1e-6 * omega_scale) continue;
    const double q = rem(x) / w;
    ra.ratio_min = std::min(ra.ratio_min, q);
    ra.ratio_max = std::max(ra.ratio_max, q);
  }

  if (f.has_derivative()) {
    const double nf = factorial(n + 1);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int i = 0; i <= 1000; ++i) {
      const double g = f.derivative(n + 1, i / 1000.0) / nf;
      lo = std::min(lo, g);
      hi = std::max(hi, g);
    }
    ra.derivative_range = std::pair{lo, hi};
    ra.contained = ra.conclusive && ra.ratio_min >= lo && ra.ratio_max <= hi;
  }
  return ra;
}

}  // namespace genbern
