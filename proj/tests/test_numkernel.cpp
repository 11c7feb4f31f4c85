#include <gtest/gtest.h>

#include <random>
#include <set>

#include "genbern/genbern.hpp"
#include "oracles.hpp"

using namespace genbern;
using oracle::q;

namespace {

using PQ = Poly<Rational>;

TEST(Poly, EvalFixtures) {
  EXPECT_EQ(PQ::monomial(2)(q(1, 2)), q(1, 4));
  EXPECT_EQ(PQ()(q(7, 10)), 0);
  EXPECT_EQ((PQ{q(1), q(-3), q(2)})(q(1)), 0);
  EXPECT_EQ(Poly<double>()(0.7), 0.0);
}

TEST(Poly, DerivativeFixtures) {
  EXPECT_EQ(PQ::monomial(2).derivative(1), (PQ{q(0), q(2)}));
  EXPECT_EQ(PQ::monomial(3).derivative(3), PQ{q(6)});
  const PQ p{q(1, 2), q(-3), q(5, 7)};
  EXPECT_EQ(p.derivative(0), p);
  EXPECT_TRUE(p.derivative(5).is_zero());
}

TEST(Poly, TrimsTrailingZeros) {
  const PQ p{q(1), q(2), q(0), q(0)};
  EXPECT_EQ(p.degree(), 1);
  EXPECT_EQ(p.coeffs().size(), 2u);
  const PQ z = p - p;
  EXPECT_TRUE(z.is_zero());
  EXPECT_TRUE(z.coeffs().empty());
  EXPECT_EQ(z.degree(), -1);
}

TEST(Poly, ProductEvaluatesMultiplicativelyExact) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const PQ a = oracle::random_poly(rng, trial % 7), b = oracle::random_poly(rng, (trial * 3) % 6);
    const Rational x = q(static_cast<long>(rng() % 19) - 9, 1 + static_cast<long>(rng() % 11));
    EXPECT_EQ((a * b)(x), a(x) * b(x));
  }
}

TEST(Poly, ProductEvaluatesMultiplicativelyFloat) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> coef(-10, 10), xd(-1, 1);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> ca(static_cast<std::size_t>(trial % 7) + 1), cb(static_cast<std::size_t>(trial % 6) + 1);
    for (auto& c : ca) c = coef(rng);
    for (auto& c : cb) c = coef(rng);
    const Poly<double> a(ca), b(cb);
    const double x = xd(rng);
    const double lhs = (a * b)(x), rhs = a(x) * b(x);
    // Relative to the absolute-value sum, the natural scale of Horner roundoff.
    double scale = 0.0, ax = std::fabs(x);
    for (std::size_t j = 0; j < ca.size(); ++j) scale += std::fabs(ca[j]) * std::pow(ax, j);
    double sb = 0.0;
    for (std::size_t j = 0; j < cb.size(); ++j) sb += std::fabs(cb[j]) * std::pow(ax, j);
    EXPECT_LE(std::fabs(lhs - rhs), 1e-12 * std::max(1.0, scale * sb));
  }
}

TEST(Poly, Divmod) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const PQ a = oracle::random_poly(rng, 6), b = oracle::random_poly(rng, 1 + trial % 4);
    const auto [quot, rem] = a.divmod(b);
    EXPECT_EQ(quot * b + rem, a);
    EXPECT_LT(rem.degree(), b.degree());
  }
}

TEST(RisingFactorial, Fixtures) {
  EXPECT_EQ(rising_factorial(q(2), 3), 24);
  EXPECT_EQ(rising_factorial(q(5, 3), 0), 1);
  EXPECT_EQ(rising_factorial(q(1, 2), 2), q(3, 4));
  EXPECT_DOUBLE_EQ(rising_factorial(2.0, 3), 24.0);
}

TEST(RisingFactorial, PolyFixtures) {
  EXPECT_EQ(rising_factorial_poly(q(1), 2), (PQ{q(0), q(1), q(1)}));
  EXPECT_EQ(rising_factorial_poly(q(7, 3), 0), PQ{q(1)});
  EXPECT_EQ(rising_factorial_poly(q(2), 2), (PQ{q(0), q(2), q(4)}));
}

TEST(RisingFactorial, PolyMatchesPointwise) {
  for (int k = 0; k <= 10; ++k) {
    const PQ p = rising_factorial_poly(q(1), k);
    for (const Rational& x : {q(0), q(1, 2), q(-7, 3), q(5), q(13, 11)}) {
      EXPECT_EQ(p(x), rising_factorial(x, k));
      EXPECT_EQ(p(x), oracle::rising(x, k));
    }
  }
  // r != 1: (r x)^(rising m)
  const PQ p = rising_factorial_poly(q(3, 2), 5);
  EXPECT_EQ(p(q(2, 7)), oracle::rising(q(3, 7), 5));
}

TEST(Binomial, SmallValues) {
  EXPECT_EQ(binomial(5, 2), 10);
  EXPECT_EQ(binomial(30, 15), mpz_class("155117520"));
  EXPECT_EQ(binomial_as<double>(10, 3), 120.0);
}

TEST(NodeSet, Validation) {
  EXPECT_THROW(NodeSet<Rational>({q(0), q(1, 2), q(1, 2)}), usage_error);
  EXPECT_THROW(NodeSet<Rational>({q(-1, 2), q(1, 2)}), usage_error);
  EXPECT_THROW(NodeSet<double>({0.5, 1.5}), usage_error);
  EXPECT_THROW(NodeSet<double>({0.6, 0.5}), usage_error);
  const auto nodes = NodeSet<Rational>::equally_spaced(3);
  ASSERT_EQ(nodes.size(), 4u);
  EXPECT_EQ(nodes[1], q(1, 3));
}

TEST(Vandermonde, Fixtures) {
  EXPECT_EQ(vandermonde_det(NodeSet<Rational>({q(0), q(1)})), 1);
  EXPECT_EQ(vandermonde_det(NodeSet<Rational>({q(0), q(1, 2), q(1)})), q(1, 4));
  EXPECT_EQ(vandermonde_det(NodeSet<Rational>::equally_spaced(3)), q(4, 243));
}

TEST(Vandermonde, PositiveOnEquallySpacedNodes) {
  for (int n = 1; n <= 12; ++n) {
    EXPECT_GT(vandermonde_det(NodeSet<Rational>::equally_spaced(n)), 0) << n;
    EXPECT_GT(vandermonde_det(NodeSet<double>::equally_spaced(n)), 0.0) << n;
  }
}

TEST(Vandermonde, MatchesCofactorDeterminant) {
  for (int n = 1; n <= 4; ++n) {
    const auto nodes = NodeSet<Rational>::equally_spaced(n);
    std::vector<std::vector<Rational>> a(n + 1, std::vector<Rational>(n + 1));
    for (int i = 0; i <= n; ++i) {
      Rational p = 1;
      for (int j = 0; j <= n; ++j, p *= nodes[i]) a[i][j] = p;
    }
    EXPECT_EQ(vandermonde_det(nodes), oracle::cofactor_det(a));
  }
}

TEST(Bernstein, BasisFixtures) {
  EXPECT_EQ(bernstein_basis(2, 1, q(1, 2)), q(1, 2));
  EXPECT_EQ(bernstein_basis(5, 0, q(0)), 1);
  EXPECT_EQ(bernstein_basis(3, 2, q(1, 3)), q(2, 9));
}

TEST(Bernstein, PartitionOfUnityExact) {
  for (int n = 1; n <= 12; ++n) {
    for (int i = 0; i <= 9; ++i) {
      const Rational x = q(i, 9);
      Rational s = 0;
      for (int k = 0; k <= n; ++k) s += bernstein_basis(n, k, x);
      EXPECT_EQ(s, 1);
    }
    PQ sum;
    for (int k = 0; k <= n; ++k) sum += bernstein_basis_poly<Rational>(n, k);
    EXPECT_EQ(sum, PQ{q(1)});
  }
}

TEST(Bernstein, CombinationMatchesPointwiseSum) {
  const std::vector<double> v{0.3, -1.2, 2.5, 0.7, 1.1};
  const auto p = bernstein_combination<double>(v);
  for (int i = 0; i <= 20; ++i) {
    const double x = i / 20.0;
    EXPECT_NEAR(p(x), oracle::bernstein_eval(v, x), 1e-13);
  }
}

TEST(Roots, Fixtures) {
  const auto r1 = isolate_real_roots(PQ{q(0), q(-1), q(1)}, q(0), q(1));
  ASSERT_EQ(r1.size(), 2u);
  EXPECT_EQ(r1[0].lo, 0);
  EXPECT_EQ(r1[1].hi, 1);

  const std::vector<Rational> roots{q(0), q(1, 2), q(1)};
  const auto r2 = isolate_real_roots(PQ::from_roots(roots), q(0), q(1));
  ASSERT_EQ(r2.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_LE(r2[i].lo, roots[i]);
    EXPECT_GE(r2[i].hi, roots[i]);
    EXPECT_TRUE(r2[i].simple);
  }

  EXPECT_TRUE(isolate_real_roots(PQ{q(1), q(0), q(1)}, q(0), q(1)).empty());
  EXPECT_TRUE(isolate_real_roots(Poly<double>{1.0, 0.0, 1.0}, 0.0, 1.0).empty());
  EXPECT_THROW(isolate_real_roots(PQ(), q(0), q(1)), usage_error);
  EXPECT_THROW(isolate_real_roots(PQ{q(1), q(1)}, q(1), q(0)), usage_error);
}

TEST(Roots, RecoversDistinctRationalRoots) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    std::set<Rational> pool;
    const int m = 1 + trial % 7;
    while (static_cast<int>(pool.size()) < m) pool.insert(q(static_cast<long>(rng() % 41), 40));
    const std::vector<Rational> rs(pool.begin(), pool.end());
    const PQ p = PQ::from_roots(rs) * q(static_cast<long>(rng() % 5) + 1, 3);

    const auto exact = isolate_real_roots(p, q(0), q(1));
    ASSERT_EQ(exact.size(), rs.size());
    for (std::size_t i = 0; i < rs.size(); ++i) {
      EXPECT_LE(exact[i].lo, rs[i]);
      EXPECT_GE(exact[i].hi, rs[i]);
      EXPECT_LE(Rational(exact[i].hi - exact[i].lo).get_d(), 1e-12);
    }
    EXPECT_EQ(sturm_count(p, q(0), q(1)) + (p(q(0)) == 0 ? 1 : 0), m);

    const auto fl = isolate_real_roots(p.cast<double>(), 0.0, 1.0);
    ASSERT_EQ(fl.size(), rs.size());
    for (std::size_t i = 0; i < rs.size(); ++i) EXPECT_NEAR(fl[i].midpoint(), rs[i].get_d(), 1e-10);
  }
}

TEST(Roots, FlagsMultipleRoots) {
  const PQ p = PQ::from_roots(std::vector<Rational>{q(1, 3), q(1, 3), q(3, 4)});
  const auto r = isolate_real_roots(p, q(0), q(1));
  ASSERT_EQ(r.size(), 2u);
  EXPECT_FALSE(r[0].simple);
  EXPECT_TRUE(r[1].simple);
}

TEST(Matrix, DenseSolveExactAndFloat) {
  Matrix<Rational> a(3, 3);
  const Rational v[3][3] = {{q(0), q(2), q(1)}, {q(1), q(1), q(1)}, {q(3), q(0), q(-1)}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) a(i, j) = v[i][j];
  const std::vector<Rational> x{q(1, 2), q(-2), q(3)};
  const auto b = a * std::span<const Rational>(x);
  EXPECT_EQ(solve_dense(a, b), x);

  Matrix<Rational> sing(2, 2);
  sing(0, 0) = 1;
  sing(0, 1) = 2;
  sing(1, 0) = 2;
  sing(1, 1) = 4;
  EXPECT_THROW(solve_dense(sing, std::vector<Rational>{q(1), q(1)}), numerical_guard);
}

TEST(DegreeCap, DefaultAndOverride) {
  unsetenv("PALTANEA_DEGREE_CAP");
  EXPECT_EQ(degree_cap(), 12);
  setenv("PALTANEA_DEGREE_CAP", "5", 1);
  EXPECT_EQ(degree_cap(), 5);
  unsetenv("PALTANEA_DEGREE_CAP");
}

TEST(Scalar, RationalsStayCanonical) {
  const Rational a = from_ratio<Rational>(6, -4);
  EXPECT_EQ(a.get_num(), -3);
  EXPECT_EQ(a.get_den(), 2);
  static_assert(Scalar<double> && Scalar<Rational>);
  static_assert(!Scalar<float> && !Scalar<int>);
}

}  // namespace
