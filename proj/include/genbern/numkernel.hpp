#pragma once

#include <span>
#include <vector>

#include "genbern/poly.hpp"

namespace genbern {

/// Exact binomial coefficient C(n, k); zero outside 0 <= k <= n.
inline mpz_class binomial(int n, int k) {
  if (k < 0 || k > n || n < 0) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

template <Scalar T>
T binomial_as(int n, int k) {
  return from_rational<T>(Rational(binomial(n, k)));
}

/// x (x+1) ... (x+k-1); the empty product for k = 0.
template <Scalar T>
T rising_factorial(const T& x, int k) {
  if (k < 0) throw usage_error("rising_factorial: negative order");
  T r(1);
  for (int i = 0; i < k; ++i) r *= T(x + T(i));
  return r;
}

/// Unsigned Stirling numbers of the first kind c(m, j), j = 0..m.
inline std::vector<mpz_class> stirling_first_row(int m) {
  std::vector<mpz_class> row{1};
  for (int i = 0; i < m; ++i) {
    // c(i+1, j) = i c(i, j) + c(i, j-1)
    std::vector<mpz_class> next(row.size() + 1, 0);
    for (std::size_t j = 0; j < row.size(); ++j) {
      next[j] += row[j] * i;
      next[j + 1] += row[j];
    }
    row = std::move(next);
  }
  return row;
}

/// q(x) = (r x)^(rising m) = sum_j c(m, j) r^j x^j.
template <Scalar T>
Poly<T> rising_factorial_poly(const T& r, int m) {
  if (m < 0) throw usage_error("rising_factorial_poly: negative order");
  const auto row = stirling_first_row(m);
  std::vector<T> coeffs(row.size());
  T rpow(1);
  for (std::size_t j = 0; j < row.size(); ++j) {
    coeffs[j] = from_rational<T>(Rational(row[j])) * rpow;
    rpow *= r;
  }
  return Poly<T>(std::move(coeffs));
}

/// Strictly increasing nodes in [0, 1].
template <Scalar T>
class NodeSet {
 public:
  explicit NodeSet(std::vector<T> nodes) : nodes_(std::move(nodes)) {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (nodes_[i] < T(0) || nodes_[i] > T(1)) throw usage_error("NodeSet: node outside [0,1]");
      if (i > 0 && !(nodes_[i - 1] < nodes_[i]))
        throw usage_error("NodeSet: nodes must be strictly increasing (duplicate node?)");
    }
  }

  /// 0, 1/n, ..., 1
  static NodeSet equally_spaced(int n) {
    if (n < 1) throw usage_error("equally_spaced: n must be >= 1");
    std::vector<T> v;
    v.reserve(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) v.push_back(from_ratio<T>(k, n));
    return NodeSet(std::move(v));
  }

  std::size_t size() const { return nodes_.size(); }
  const T& operator[](std::size_t i) const { return nodes_[i]; }
  std::span<const T> values() const { return nodes_; }
  auto begin() const { return nodes_.begin(); }
  auto end() const { return nodes_.end(); }

 private:
  std::vector<T> nodes_;
};

/// prod_{i<j} (x_j - x_i), formed as a product.
template <Scalar T>
T vandermonde_det(const NodeSet<T>& nodes) {
  T r(1);
  for (std::size_t j = 0; j < nodes.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) r *= T(nodes[j] - nodes[i]);
  return r;
}

/// p_{n,k}(x) = C(n,k) x^k (1-x)^(n-k)
template <Scalar T>
T bernstein_basis(int n, int k, const T& x) {
  if (n < 0 || k < 0 || k > n) throw usage_error("bernstein_basis: k out of range");
  T r = binomial_as<T>(n, k);
  for (int i = 0; i < k; ++i) r *= x;
  const T y = T(1) - x;
  for (int i = 0; i < n - k; ++i) r *= y;
  return r;
}

/// Monomial coefficients of p_{n,k}, from the exact expansion
/// C(n,k) C(n-k, j-k) (-1)^(j-k) x^j.
template <Scalar T>
Poly<T> bernstein_basis_poly(int n, int k) {
  if (n < 0 || k < 0 || k > n) throw usage_error("bernstein_basis_poly: k out of range");
  std::vector<T> c(static_cast<std::size_t>(n) + 1, T(0));
  const mpz_class cnk = binomial(n, k);
  for (int j = k; j <= n; ++j) {
    mpz_class v = cnk * binomial(n - k, j - k);
    if ((j - k) % 2) v = -v;
    c[static_cast<std::size_t>(j)] = from_rational<T>(Rational(v));
  }
  return Poly<T>(std::move(c));
}

/// sum_k values[k] p_{n,k} in the monomial basis, n = values.size() - 1.
/// The basis conversion runs on exact integers; only the final products are
/// formed in T.
template <Scalar T>
Poly<T> bernstein_combination(std::span<const T> values) {
  if (values.empty()) throw usage_error("bernstein_combination: empty table");
  const int n = static_cast<int>(values.size()) - 1;
  std::vector<T> c(values.size(), T(0));
  for (int j = 0; j <= n; ++j) {
    const mpz_class cnj = binomial(n, j);
    for (int k = 0; k <= j; ++k) {
      // C(n,k) C(n-k,j-k) = C(n,j) C(j,k)
      mpz_class w = cnj * binomial(j, k);
      if ((j - k) % 2) w = -w;
      c[static_cast<std::size_t>(j)] += from_rational<T>(Rational(w)) * values[static_cast<std::size_t>(k)];
    }
  }
  return Poly<T>(std::move(c));
}

}  // namespace genbern
