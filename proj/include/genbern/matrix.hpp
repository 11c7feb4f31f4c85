#pragma once

#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "genbern/scalar.hpp"

namespace genbern {

/// Small dense row-major matrix.
template <Scalar T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  std::vector<T> operator*(std::span<const T> v) const {
    if (v.size() != cols_) throw usage_error("Matrix*vector: size mismatch");
    std::vector<T> out(rows_, T(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Solves U x = b for upper-triangular U by back substitution.
template <Scalar T>
std::vector<T> solve_upper(const Matrix<T>& u, std::span<const T> b) {
  const std::size_t n = u.rows();
  if (u.cols() != n || b.size() != n) throw usage_error("solve_upper: size mismatch");
  std::vector<T> x(n, T(0));
  for (std::size_t ii = n; ii-- > 0;) {
    T acc = b[ii];
    for (std::size_t j = ii + 1; j < n; ++j) acc -= u(ii, j) * x[j];
    if (u(ii, ii) == T(0)) throw numerical_guard("solve_upper: zero diagonal entry");
    x[ii] = acc / u(ii, ii);
  }
  return x;
}

/// Gaussian elimination. Float mode pivots on the largest magnitude; exact
/// mode takes the first nonzero pivot.
template <Scalar T>
std::vector<T> solve_dense(Matrix<T> a, std::vector<T> b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw usage_error("solve_dense: size mismatch");
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    if constexpr (is_exact_v<T>) {
      while (piv < n && a(piv, col) == T(0)) ++piv;
    } else {
      for (std::size_t r = col + 1; r < n; ++r)
        if (std::fabs(a(r, col)) > std::fabs(a(piv, col))) piv = r;
      if (a(piv, col) == 0.0) piv = n;
    }
    if (piv == n) throw numerical_guard("solve_dense: singular matrix");
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
      std::swap(b[piv], b[col]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a(r, col) == T(0)) continue;
      const T f = a(r, col) / a(col, col);
      for (std::size_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
      b[r] -= f * b[col];
    }
  }
  return solve_upper<T>(a, b);
}

}  // namespace genbern
