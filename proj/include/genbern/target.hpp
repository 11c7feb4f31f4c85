#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "genbern/poly.hpp"

namespace genbern {

/// A function on [0,1]. Carries an exact polynomial form when one is known
/// (which enables the rational path) and optionally a derivative oracle for
/// mean-value diagnostics.
class TargetFunction {
 public:
  using Evaluator = std::function<double(double)>;
  using DerivativeOracle = std::function<double(int, double)>;

  TargetFunction(Evaluator eval, std::string name, DerivativeOracle derivative = {})
      : eval_(std::move(eval)), derivative_(std::move(derivative)), name_(std::move(name)) {
    if (!eval_) throw usage_error("TargetFunction: empty evaluator");
  }

  static TargetFunction polynomial(Poly<Rational> p, std::string name = "poly") {
    const Poly<double> pd = p.cast<double>();
    TargetFunction f([pd](double x) { return pd(x); }, std::move(name),
                     [pd](int order, double x) { return pd.derivative(order)(x); });
    f.exact_ = std::move(p);
    return f;
  }

  static TargetFunction monomial(int m) { return polynomial(Poly<Rational>::monomial(m), "e_" + std::to_string(m)); }

  static TargetFunction exp() {
    return {[](double x) { return std::exp(x); }, "exp", [](int, double x) { return std::exp(x); }};
  }

  static TargetFunction sin() {
    return {[](double x) { return std::sin(x); }, "sin", [](int order, double x) {
              switch (((order % 4) + 4) % 4) {
                case 0: return std::sin(x);
                case 1: return std::cos(x);
                case 2: return -std::sin(x);
                default: return -std::cos(x);
              }
            }};
  }

  static TargetFunction cos() {
    return {[](double x) { return std::cos(x); }, "cos", [](int order, double x) {
              switch (((order % 4) + 4) % 4) {
                case 0: return std::cos(x);
                case 1: return -std::sin(x);
                case 2: return -std::cos(x);
                default: return std::sin(x);
              }
            }};
  }

  /// Evaluator plus an exact form; the two must agree on a 101-point grid.
  static TargetFunction with_exact(Evaluator eval, Poly<Rational> p, std::string name) {
    const Poly<double> pd = p.cast<double>();
    for (int i = 0; i <= 100; ++i) {
      const double x = i / 100.0;
      if (std::fabs(eval(x) - pd(x)) > 1e-12) throw usage_error("TargetFunction: evaluator disagrees with exact form");
    }
    TargetFunction f(std::move(eval), std::move(name), [pd](int order, double x) { return pd.derivative(order)(x); });
    f.exact_ = std::move(p);
    return f;
  }

  /// Same function with the exact form dropped, forcing quadrature.
  TargetFunction evaluator_only() const {
    TargetFunction f = *this;
    f.exact_.reset();
    return f;
  }

  double operator()(double x) const { return eval_(x); }

  /// Value in scalar mode T; exact mode needs the polynomial form.
  template <Scalar T>
  T value(const T& x) const {
    if constexpr (is_exact_v<T>) {
      if (!exact_) throw usage_error("exact mode requires a polynomial target (" + name_ + ")");
      return (*exact_)(x);
    } else {
      return exact_ ? exact_->cast<double>()(x) : eval_(x);
    }
  }

  bool has_exact() const { return exact_.has_value(); }
  const std::optional<Poly<Rational>>& exact_poly() const { return exact_; }
  bool has_derivative() const { return static_cast<bool>(derivative_); }

  double derivative(int order, double x) const {
    if (!derivative_) throw usage_error("no derivative oracle for " + name_);
    return derivative_(order, x);
  }

  const std::string& name() const { return name_; }

 private:
  Evaluator eval_;
  DerivativeOracle derivative_;
  std::optional<Poly<Rational>> exact_;
  std::string name_;
};

}  // namespace genbern
