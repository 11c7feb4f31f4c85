#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "genbern/quadrature.hpp"
#include "oracles.hpp"

using namespace genbern;

namespace {

const double kExponents[] = {-0.5, 0.0, 0.7, 4.0};

TEST(LogGamma, Fixtures) {
  EXPECT_NEAR(log_gamma(1.0), 0.0, 1e-15);
  EXPECT_NEAR(log_gamma(5.0), std::log(24.0), 1e-14);
  EXPECT_NEAR(log_gamma(0.5), 0.5723649429247001, 1e-14);
  EXPECT_THROW(log_gamma(0.0), usage_error);
  EXPECT_THROW(log_gamma(-1.5), usage_error);
}

TEST(LogBeta, Fixtures) {
  EXPECT_NEAR(log_beta(1, 1), 0.0, 1e-15);
  EXPECT_NEAR(log_beta(2, 3), std::log(1.0 / 12.0), 1e-14);
  EXPECT_NEAR(log_beta(0.5, 0.5), std::log(std::numbers::pi), 1e-14);
  // Large arguments stay finite where the Gamma values overflow.
  EXPECT_TRUE(std::isfinite(log_beta(5000.0, 3000.0)));
}

TEST(GaussJacobi, Fixtures) {
  const auto r1 = gauss_jacobi_rule(0, 0, 1);
  ASSERT_EQ(r1.order(), 1);
  EXPECT_NEAR(r1.nodes[0], 0.5, 1e-15);
  EXPECT_NEAR(r1.weights[0], 1.0, 1e-15);

  EXPECT_NEAR(integrate(gauss_jacobi_rule(0, 0, 2), [](double x) { return x * x; }), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(integrate(gauss_jacobi_rule(0, 1, 3), [](double) { return 1.0; }), 0.5, 1e-15);
  EXPECT_NEAR(integrate(gauss_jacobi_rule(0, 0, 32), [](double x) { return std::exp(x); }), std::exp(1.0) - 1.0, 1e-14);
}

TEST(GaussJacobi, RejectsBadArguments) {
  EXPECT_THROW(gauss_jacobi_rule(-1.0, 0, 4), usage_error);
  EXPECT_THROW(gauss_jacobi_rule(0, -2.0, 4), usage_error);
  EXPECT_THROW(gauss_jacobi_rule(0, 0, 0), usage_error);
}

TEST(GaussJacobi, TotalMassAndSymmetry) {
  for (double a : kExponents)
    for (double b : kExponents)
      for (int m : {2, 5, 9}) {
        const auto rule = gauss_jacobi_rule(a, b, m);
        EXPECT_NEAR(integrate(rule, [](double) { return 1.0; }), std::exp(log_beta(a + 1, b + 1)),
                    1e-13 * std::exp(log_beta(a + 1, b + 1)));
      }
  EXPECT_NEAR(integrate(gauss_jacobi_rule(0, 0, 4), [](double x) { return x; }), 0.5, 1e-15);
}

TEST(GaussJacobi, NodesInteriorIncreasingWeightsPositive) {
  for (double a : kExponents)
    for (double b : kExponents)
      for (int m : {1, 2, 3, 8, 16, 33, 64}) {
        const auto rule = gauss_jacobi_rule(a, b, m);
        ASSERT_EQ(rule.order(), m);
        for (int i = 0; i < m; ++i) {
          EXPECT_GT(rule.nodes[i], 0.0);
          EXPECT_LT(rule.nodes[i], 1.0);
          EXPECT_GT(rule.weights[i], 0.0);
          EXPECT_GT(rule.probabilities[i], 0.0);
          if (i > 0) EXPECT_LT(rule.nodes[i - 1], rule.nodes[i]);
        }
      }
}

TEST(GaussJacobi, PolynomialExactness) {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> coef(-1, 1);
  for (double a : kExponents)
    for (double b : kExponents)
      for (int m : {2, 4, 8, 16}) {
        std::vector<double> c(static_cast<std::size_t>(2 * m));
        for (auto& v : c) v = coef(rng);
        double exact = 0.0, scale = 0.0;
        for (std::size_t j = 0; j < c.size(); ++j) {
          const double bj = std::exp(log_beta(a + 1 + static_cast<double>(j), b + 1));
          exact += c[j] * bj;
          scale += std::fabs(c[j]) * bj;
        }
        const double got = integrate(gauss_jacobi_rule(a, b, m), [&](double x) {
          double s = 0.0;
          for (std::size_t j = c.size(); j-- > 0;) s = s * x + c[j];
          return s;
        });
        // Relative to the absolute moment sum, since the signed sum can cancel.
        EXPECT_LE(std::fabs(got - exact), 1e-11 * scale) << a << " " << b << " " << m;
      }
}

TEST(GaussJacobi, ConvergenceOnExp) {
  auto f = [](double x) { return std::exp(x); };
  for (double a : kExponents)
    for (double b : kExponents) {
      // Series sum_j B(a+1+j, b+1)/j!, terms formed by ratio.
      double ref = 0.0, term = std::exp(log_beta(a + 1, b + 1));
      for (int j = 0; j < 60; ++j) {
        ref += term;
        term *= (a + 1 + j) / (a + b + 2 + j) / (j + 1);
      }
      double prev = INFINITY;
      for (int m = 4; m <= 64; m *= 2) {
        const double err = std::fabs(integrate(gauss_jacobi_rule(a, b, m), f) - ref);
        // From m = 8 on the error sits at roundoff and can only jitter there.
        EXPECT_TRUE(err < prev || err <= 1e-14 * std::fabs(ref)) << a << " " << b << " " << m;
        prev = std::max(err, 1e-300);
      }
    }
}

TEST(GaussJacobi, AgreesWithSimpsonOnSmoothWeights) {
  for (double a : {0.0, 2.0, 4.0})
    for (double b : {0.0, 4.0}) {
      auto integrand = [&](double t) { return std::pow(t, a) * std::pow(1 - t, b) * std::cos(3 * t); };
      const double ref = oracle::simpson(integrand, 0.0, 1.0, 20000);
      EXPECT_NEAR(integrate(gauss_jacobi_rule(a, b, 40), [](double t) { return std::cos(3 * t); }), ref, 1e-9);
    }
}

TEST(GaussJacobi, WeightedMeanSurvivesHugeExponents) {
  // Beta(2000, 3000) mean is 2/5; the raw mass underflows but the normalized
  // probabilities do not.
  const auto rule = gauss_jacobi_rule(1999.0, 2999.0, 40);
  EXPECT_NEAR(weighted_mean(rule, [](double t) { return t; }), 0.4, 1e-12);
}

TEST(GaussJacobi, DefaultOrder) {
  EXPECT_EQ(default_quadrature_order(1), 32);
  EXPECT_EQ(default_quadrature_order(20), 48);
}

}  // namespace
