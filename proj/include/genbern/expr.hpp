#pragma once

#include <cctype>
#include <cmath>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "genbern/target.hpp"

namespace genbern::expr {

/// Syntax error at a byte offset into the source.
class ParseError : public usage_error {
 public:
  ParseError(std::size_t offset, std::set<std::string> expected, const std::string& msg)
      : usage_error(format(offset, expected, msg)), offset_(offset), expected_(std::move(expected)) {}

  std::size_t offset() const { return offset_; }
  const std::set<std::string>& expected() const { return expected_; }

 private:
  static std::string format(std::size_t offset, const std::set<std::string>& expected, const std::string& msg) {
    std::string s = "parse error at offset " + std::to_string(offset) + ": " + msg;
    if (!expected.empty()) {
      s += " (expected one of:";
      for (const auto& e : expected) s += " " + e;
      s += ")";
    }
    return s;
  }

  std::size_t offset_;
  std::set<std::string> expected_;
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  enum class Kind { Number, Var, Neg, Add, Sub, Mul, Div, Pow, Call };
  Kind kind;
  Rational value;      // Number
  std::string text;    // Number literal or Call name
  long exponent = 0;   // Pow
  NodePtr lhs, rhs;    // operands; Neg/Pow/Call use lhs
};

inline bool equivalent(const NodePtr& a, const NodePtr& b) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Node::Kind::Number: return a->value == b->value;
    case Node::Kind::Var: return true;
    case Node::Kind::Pow: return a->exponent == b->exponent && equivalent(a->lhs, b->lhs);
    case Node::Kind::Call: return a->text == b->text && equivalent(a->lhs, b->lhs);
    default: return equivalent(a->lhs, b->lhs) && equivalent(a->rhs, b->rhs);
  }
}

/// Fully parenthesized form; parses back to an equivalent tree.
inline std::string print(const NodePtr& n) {
  switch (n->kind) {
    case Node::Kind::Number: return n->text;
    case Node::Kind::Var: return "x";
    case Node::Kind::Neg: return "(-" + print(n->lhs) + ")";
    case Node::Kind::Add: return "(" + print(n->lhs) + " + " + print(n->rhs) + ")";
    case Node::Kind::Sub: return "(" + print(n->lhs) + " - " + print(n->rhs) + ")";
    case Node::Kind::Mul: return "(" + print(n->lhs) + " * " + print(n->rhs) + ")";
    case Node::Kind::Div: return "(" + print(n->lhs) + " / " + print(n->rhs) + ")";
    case Node::Kind::Pow: return "(" + print(n->lhs) + "^" + std::to_string(n->exponent) + ")";
    case Node::Kind::Call: return n->text + "(" + print(n->lhs) + ")";
  }
  return {};
}

inline double evaluate(const NodePtr& n, double x) {
  switch (n->kind) {
    case Node::Kind::Number: return n->value.get_d();
    case Node::Kind::Var: return x;
    case Node::Kind::Neg: return -evaluate(n->lhs, x);
    case Node::Kind::Add: return evaluate(n->lhs, x) + evaluate(n->rhs, x);
    case Node::Kind::Sub: return evaluate(n->lhs, x) - evaluate(n->rhs, x);
    case Node::Kind::Mul: return evaluate(n->lhs, x) * evaluate(n->rhs, x);
    case Node::Kind::Div: return evaluate(n->lhs, x) / evaluate(n->rhs, x);
    case Node::Kind::Pow: return std::pow(evaluate(n->lhs, x), static_cast<double>(n->exponent));
    case Node::Kind::Call: {
      const double a = evaluate(n->lhs, x);
      if (n->text == "exp") return std::exp(a);
      if (n->text == "sin") return std::sin(a);
      if (n->text == "cos") return std::cos(a);
      return std::fabs(a);
    }
  }
  return 0.0;
}

/// Exact polynomial form when the tree has no calls, only non-negative
/// integer powers and division by nonzero constants.
inline std::optional<Poly<Rational>> to_poly(const NodePtr& n) {
  using P = Poly<Rational>;
  auto bin = [&](auto op) -> std::optional<P> {
    auto a = to_poly(n->lhs);
    auto b = to_poly(n->rhs);
    if (!a || !b) return std::nullopt;
    return op(*a, *b);
  };
  switch (n->kind) {
    case Node::Kind::Number: return P::constant(n->value);
    case Node::Kind::Var: return P::monomial(1);
    case Node::Kind::Neg: {
      auto a = to_poly(n->lhs);
      if (!a) return std::nullopt;
      return -*a;
    }
    case Node::Kind::Add: return bin([](const P& a, const P& b) { return a + b; });
    case Node::Kind::Sub: return bin([](const P& a, const P& b) { return a - b; });
    case Node::Kind::Mul: return bin([](const P& a, const P& b) { return a * b; });
    case Node::Kind::Div: {
      auto a = to_poly(n->lhs);
      auto b = to_poly(n->rhs);
      if (!a || !b || b->degree() != 0) return std::nullopt;
      return *a / b->leading();
    }
    case Node::Kind::Pow: {
      if (n->exponent < 0) return std::nullopt;
      auto a = to_poly(n->lhs);
      if (!a) return std::nullopt;
      P r = P::constant(1);
      for (long i = 0; i < n->exponent; ++i) r = r * *a;
      return r;
    }
    case Node::Kind::Call: return std::nullopt;
  }
  return std::nullopt;
}

/// Recursive-descent parser:
///   expr  := term (('+'|'-') term)*
///   term  := unary (('*'|'/') unary)*
///   unary := ('-'|'+') unary | power
///   power := primary ('^' ['-'|'+'] integer)?
///   primary := number | 'x' | name '(' expr ')' | '(' expr ')'
class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  NodePtr parse() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError(pos_, {"expression"}, "empty input");
    NodePtr n = parse_expr();
    skip_ws();
    if (pos_ < src_.size()) throw ParseError(pos_, {"+", "-", "*", "/", "^", "end of input"}, "unexpected character");
    return n;
  }

 private:
  static std::shared_ptr<Node> make(Node::Kind k, NodePtr a = nullptr, NodePtr b = nullptr) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      if (accept('+'))
        lhs = make(Node::Kind::Add, lhs, parse_term());
      else if (accept('-'))
        lhs = make(Node::Kind::Sub, lhs, parse_term());
      else
        return lhs;
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    for (;;) {
      if (accept('*'))
        lhs = make(Node::Kind::Mul, lhs, parse_unary());
      else if (accept('/'))
        lhs = make(Node::Kind::Div, lhs, parse_unary());
      else
        return lhs;
    }
  }

  NodePtr parse_unary() {
    if (accept('-')) return make(Node::Kind::Neg, parse_unary());
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    if (!accept('^')) return base;
    skip_ws();
    bool neg = false;
    bool paren = accept('(');
    if (accept('-'))
      neg = true;
    else
      accept('+');
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError(pos_, {"integer exponent"}, "only integer powers are supported");
    long e = 0;
    try {
      e = std::stol(std::string(src_.substr(start, pos_ - start)));
    } catch (const std::out_of_range&) {
      throw ParseError(start, {"integer exponent"}, "exponent too large");
    }
    if (paren && !accept(')')) throw ParseError(pos_, {")"}, "unclosed exponent");
    auto n = make(Node::Kind::Pow, base);
    n->exponent = neg ? -e : e;
    return n;
  }

  NodePtr parse_number() {
    const std::size_t start = pos_;
    std::string digits;
    long exp10 = 0;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) digits += src_[pos_++];
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        digits += src_[pos_++];
        --exp10;
      }
    }
    if (digits.empty()) throw ParseError(start, {"digit"}, "malformed number");
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t save = pos_++;
      int sign = 1;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) sign = src_[pos_++] == '-' ? -1 : 1;
      const std::size_t es = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      if (es == pos_) {
        pos_ = save;  // 'e' not followed by an exponent; let the caller complain
      } else {
        exp10 += sign * std::stol(std::string(src_.substr(es, pos_ - es)));
      }
    }
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Number;
    n->text = std::string(src_.substr(start, pos_ - start));
    n->value = decimal_to_rational(digits, exp10);
    return n;
  }

  static Rational decimal_to_rational(const std::string& digits, long exp10) {
    mpz_class num(digits, 10);  // explicit base: "0125" is not octal
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    Rational q = exp10 < 0 ? Rational(num, pow10) : Rational(num * pow10);
    q.canonicalize();
    return q;
  }

  NodePtr parse_primary() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError(pos_, {"number", "x", "(", "function"}, "unexpected end of input");
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (c == '(') {
      ++pos_;
      NodePtr inner = parse_expr();
      if (!accept(')')) throw ParseError(pos_, {")"}, "unbalanced parenthesis");
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      std::string name(src_.substr(start, pos_ - start));
      if (name == "x") return make(Node::Kind::Var);
      static const std::set<std::string> kFunctions{"exp", "sin", "cos", "abs"};
      if (!kFunctions.count(name)) throw ParseError(start, {"x", "exp", "sin", "cos", "abs"}, "unknown identifier '" + name + "'");
      if (!accept('(')) throw ParseError(pos_, {"("}, "expected '(' after " + name);
      NodePtr arg = parse_expr();
      if (!accept(')')) throw ParseError(pos_, {")"}, "unbalanced parenthesis");
      auto n = make(Node::Kind::Call, arg);
      n->text = name;
      return n;
    }
    throw ParseError(pos_, {"number", "x", "(", "function"}, std::string("unexpected character '") + c + "'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

/// A parsed target function.
class FunctionExpr {
 public:
  explicit FunctionExpr(std::string source) : source_(std::move(source)), root_(Parser(source_).parse()) {
    poly_ = to_poly(root_);
  }

  const std::string& source() const { return source_; }
  const NodePtr& root() const { return root_; }
  const std::optional<Poly<Rational>>& poly() const { return poly_; }
  bool is_polynomial() const { return poly_.has_value(); }
  std::string to_string() const { return print(root_); }
  double operator()(double x) const { return evaluate(root_, x); }

  /// Target function; polynomials carry their exact form, and exp/sin/cos of
  /// bare x get the builtin derivative oracles.
  TargetFunction to_target() const {
    if (poly_) return TargetFunction::polynomial(*poly_, source_);
    if (root_->kind == Node::Kind::Call && root_->lhs->kind == Node::Kind::Var) {
      if (root_->text == "exp") return TargetFunction::exp();
      if (root_->text == "sin") return TargetFunction::sin();
      if (root_->text == "cos") return TargetFunction::cos();
    }
    NodePtr root = root_;
    return TargetFunction([root](double x) { return evaluate(root, x); }, source_);
  }

 private:
  std::string source_;
  NodePtr root_;
  std::optional<Poly<Rational>> poly_;
};

inline FunctionExpr parse_function(const std::string& source) { return FunctionExpr(source); }

/// Exact rational from "p/q" or a decimal literal such as "0.25" or "1e3".
inline Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const Rational num = parse_rational(text.substr(0, slash));
    const Rational den = parse_rational(text.substr(slash + 1));
    if (den == 0) throw usage_error("zero denominator in '" + text + "'");
    return num / den;
  }
  FunctionExpr e(text);
  auto p = e.poly();
  if (!p || p->degree() > 0) throw usage_error("not a rational literal: '" + text + "'");
  return p->coeff(0);
}

}  // namespace genbern::expr
