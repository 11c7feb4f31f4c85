#pragma once

#include <Eigen/Eigenvalues>

#include <cmath>
#include <functional>
#include <vector>

#include "genbern/errors.hpp"

namespace genbern {

/// ln Gamma(x) for x > 0.
inline double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw usage_error("log_gamma: argument must be positive and finite");
  return std::lgamma(x);
}

/// ln B(a, b).
inline double log_beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw usage_error("log_beta: arguments must be positive");
  return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

/// Gauss rule for the weight t^alpha (1-t)^beta on [0,1].
///
/// `probabilities` are the weights divided by the total mass B(alpha+1, beta+1);
/// they are what the Beta-mean functionals use, so the normalization happens in
/// log space and never overflows. `weights` carries the unnormalized values and
/// may underflow for very large exponents.
struct QuadratureRule {
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> probabilities;
  double log_mass = 0.0;  ///< ln B(alpha+1, beta+1)

  int order() const { return static_cast<int>(nodes.size()); }
};

/// Golub-Welsch: eigen-decomposition of the Jacobi matrix of the monic Jacobi
/// recurrence, mapped from [-1,1] to [0,1].
inline QuadratureRule gauss_jacobi_rule(double alpha, double beta, int m) {
  if (!(alpha > -1.0) || !(beta > -1.0)) throw usage_error("gauss_jacobi_rule: exponents must exceed -1");
  if (m < 1) throw usage_error("gauss_jacobi_rule: order must be >= 1");

  // On [-1,1] the weight (1-x)^a (1+x)^b with t = (1+x)/2 gives a = beta, b = alpha.
  const double a = beta;
  const double b = alpha;
  const double ab = a + b;
  Eigen::VectorXd diag(m);
  Eigen::VectorXd sub(std::max(m - 1, 0));
  for (int k = 0; k < m; ++k) {
    const double s = 2.0 * k + ab;
    double d;
    if (k == 0)
      d = (b - a) / (ab + 2.0);
    else
      d = (b * b - a * a) / (s * (s + 2.0));
    diag(k) = 0.5 * (d + 1.0);
  }
  for (int k = 1; k < m; ++k) {
    const double s = 2.0 * k + ab;
    double bk;
    if (k == 1)
      bk = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    else
      bk = 4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
    sub(k - 1) = 0.5 * std::sqrt(bk);
  }

  QuadratureRule rule;
  rule.alpha = alpha;
  rule.beta = beta;
  rule.log_mass = log_beta(alpha + 1.0, beta + 1.0);
  rule.nodes.resize(static_cast<std::size_t>(m));
  rule.probabilities.resize(static_cast<std::size_t>(m));
  if (m == 1) {
    rule.nodes[0] = diag(0);
    rule.probabilities[0] = 1.0;
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) throw numerical_guard("gauss_jacobi_rule: eigen-solve failed");
    // Eigen returns eigenvalues in increasing order.
    for (int i = 0; i < m; ++i) {
      rule.nodes[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
      const double v0 = solver.eigenvectors()(0, i);
      rule.probabilities[static_cast<std::size_t>(i)] = v0 * v0;
    }
  }
  const double mass = std::exp(rule.log_mass);
  rule.weights.resize(rule.probabilities.size());
  for (std::size_t i = 0; i < rule.weights.size(); ++i) rule.weights[i] = rule.probabilities[i] * mass;
  return rule;
}

/// sum_i weights[i] f(nodes[i]); f is only sampled at interior nodes.
inline double integrate(const QuadratureRule& rule, const std::function<double(double)>& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * f(rule.nodes[i]);
  return s;
}

/// The integral divided by the total mass: the Beta-weighted mean of f.
inline double weighted_mean(const QuadratureRule& rule, const std::function<double(double)>& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.probabilities[i] * f(rule.nodes[i]);
  return s;
}

/// Order used for the Beta functionals of an n-th degree operator.
inline int default_quadrature_order(int n) { return std::max(32, 2 * n + 8); }

}  // namespace genbern
