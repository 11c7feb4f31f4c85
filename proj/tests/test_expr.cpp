#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "genbern/expr.hpp"
#include "oracles.hpp"

using namespace genbern;
using namespace genbern::expr;
using oracle::q;

namespace {

using PQ = Poly<Rational>;

TEST(Parser, Fixtures) {
  const auto sq = parse_function("x^2");
  ASSERT_TRUE(sq.is_polynomial());
  EXPECT_EQ(*sq.poly(), PQ::monomial(2));

  const auto e = parse_function("exp(x)");
  EXPECT_FALSE(e.is_polynomial());
  EXPECT_EQ(e.root()->kind, Node::Kind::Call);
  EXPECT_DOUBLE_EQ(e(0.5), std::exp(0.5));

  const auto p = parse_function("1/3*x - x^3");
  ASSERT_TRUE(p.is_polynomial());
  EXPECT_EQ(*p.poly(), (PQ{q(0), q(1, 3), q(0), q(-1)}));
  EXPECT_EQ(p.to_string(), "(((1 / 3) * x) - (x^3))");
}

TEST(Parser, ExactDecimalsAndPrecedence) {
  EXPECT_EQ(*parse_function("0.1*x").poly(), (PQ{q(0), q(1, 10)}));
  EXPECT_EQ(*parse_function("2.5e-1").poly(), PQ{q(1, 4)});
  EXPECT_EQ(*parse_function("-x^2").poly(), (PQ{q(0), q(0), q(-1)}));
  EXPECT_EQ(*parse_function("(1 - x)^(3)").poly(), (PQ{q(1), q(-3), q(3), q(-1)}));
  EXPECT_EQ(*parse_function("2*x + 3*x*x / 6").poly(), (PQ{q(0), q(2), q(1, 2)}));
  EXPECT_EQ(*parse_function("(x+1)^0").poly(), PQ{q(1)});
}

TEST(Parser, NonPolynomialForms) {
  EXPECT_FALSE(parse_function("x^-1").is_polynomial());
  EXPECT_FALSE(parse_function("1/x").is_polynomial());
  EXPECT_FALSE(parse_function("sin(x) + x").is_polynomial());
  EXPECT_FALSE(parse_function("abs(x - 1/2)").is_polynomial());
  EXPECT_NEAR(parse_function("abs(x - 1/2)")(0.25), 0.25, 1e-15);
  EXPECT_NEAR(parse_function("cos(2*x)")(0.3), std::cos(0.6), 1e-15);
}

TEST(Parser, ErrorsCarryOffsetAndExpectations) {
  for (const char* bad : {"", "x +", "2 ** x", "foo(x)", "x^y", "(x", "x)", "3 x", "exp x", "x^1.5"}) {
    EXPECT_THROW(parse_function(bad), ParseError) << bad;
  }
  try {
    parse_function("x + )");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 4u);
    EXPECT_FALSE(e.expected().empty());
  }
}

TEST(Parser, RoundTripPreservesStructure) {
  std::mt19937 rng(77);
  const char* atoms[] = {"x", "1/2", "3", "0.25", "exp(x)", "sin(x)", "(x - 1)"};
  const char* ops[] = {" + ", " - ", " * ", " / "};
  for (int trial = 0; trial < 200; ++trial) {
    std::string s = atoms[rng() % 7];
    for (int i = 0; i < 1 + static_cast<int>(rng() % 5); ++i) {
      s += ops[rng() % 4];
      s += atoms[rng() % 7];
      if (rng() % 4 == 0) s = "(" + s + ")^" + std::to_string(rng() % 4);
    }
    const auto a = parse_function(s);
    const auto b = parse_function(a.to_string());
    EXPECT_TRUE(equivalent(a.root(), b.root())) << s;
    EXPECT_EQ(a.to_string(), b.to_string());
    EXPECT_EQ(a.is_polynomial(), b.is_polynomial());
  }
}

TEST(Parser, PolynomialDetectionIsExact) {
  std::mt19937 rng(78);
  for (int trial = 0; trial < 50; ++trial) {
    const PQ p = oracle::random_poly(rng, static_cast<int>(rng() % 6));
    std::string s;
    for (int j = 0; j <= p.degree(); ++j) {
      if (j) s += " + ";
      s += "(" + p.coeff(j).get_str() + ")*x^" + std::to_string(j);
    }
    const auto f = parse_function(s);
    ASSERT_TRUE(f.is_polynomial()) << s;
    EXPECT_EQ(*f.poly(), p);
  }
}

TEST(Parser, TargetsCarryOracles) {
  EXPECT_TRUE(parse_function("x^3 - x").to_target().has_exact());
  const auto e = parse_function("exp(x)").to_target();
  EXPECT_FALSE(e.has_exact());
  EXPECT_TRUE(e.has_derivative());
  EXPECT_FALSE(parse_function("exp(2*x)").to_target().has_derivative());
}

TEST(ParseRational, Forms) {
  EXPECT_EQ(parse_rational("3/4"), q(3, 4));
  EXPECT_EQ(parse_rational("0.125"), q(1, 8));
  EXPECT_EQ(parse_rational("-1/2"), q(-1, 2));
  EXPECT_EQ(parse_rational("1e3"), q(1000));
  EXPECT_THROW(parse_rational("1/0"), usage_error);
  EXPECT_THROW(parse_rational("x"), usage_error);
}

}  // namespace
