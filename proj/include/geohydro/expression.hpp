#pragma once

// Grammar accepted by parse_expression:
//
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := base ('^' factor)?
//   base   := number | 'x' | 'pi' | fn '(' expr ')' | '(' expr ')' | '-' base
//   fn     := sin | cos | tan | exp | log | sqrt | abs | sinh | cosh
//
// Numbers accept an optional fraction and exponent (1.5e-3). Whitespace is
// ignored between tokens.

#include <cctype>
#include <cmath>
#include <cstddef>
#include <memory>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>

#include "geohydro/errors.hpp"
#include "geohydro/grid.hpp"

namespace geohydro {

class Expression {
 public:
  enum class Op { Number, Var, Neg, Add, Sub, Mul, Div, Pow, Call };
  enum class Fn { Sin, Cos, Tan, Exp, Log, Sqrt, Abs, Sinh, Cosh };

  struct Node {
    Op op;
    std::size_t offset = 0;
    double value = 0.0;
    Fn fn = Fn::Sin;
    std::unique_ptr<Node> lhs;
    std::unique_ptr<Node> rhs;
  };

  explicit Expression(std::unique_ptr<Node> root, std::string source)
      : root_(std::move(root)), source_(std::move(source)) {}

  /// Evaluates at one point; throws EvalError on domain faults.
  double operator()(double x) const { return eval(*root_, x); }

  const std::string& source() const noexcept { return source_; }

 private:
  [[noreturn]] static void fault(const Node& node, const std::string& what) {
    throw Error(ErrorKind::EvalError, what + " (at byte " + std::to_string(node.offset) + ")");
  }

  static double eval(const Node& node, double x) {
    switch (node.op) {
      case Op::Number: return node.value;
      case Op::Var: return x;
      case Op::Neg: return -eval(*node.lhs, x);
      case Op::Add: return eval(*node.lhs, x) + eval(*node.rhs, x);
      case Op::Sub: return eval(*node.lhs, x) - eval(*node.rhs, x);
      case Op::Mul: return eval(*node.lhs, x) * eval(*node.rhs, x);
      case Op::Div: {
        const double den = eval(*node.rhs, x);
        if (den == 0.0) fault(node, "division by zero at x = " + std::to_string(x));
        return eval(*node.lhs, x) / den;
      }
      case Op::Pow: {
        const double r = std::pow(eval(*node.lhs, x), eval(*node.rhs, x));
        if (!std::isfinite(r)) fault(node, "non-finite power at x = " + std::to_string(x));
        return r;
      }
      case Op::Call: return call(node, eval(*node.lhs, x), x);
    }
    fault(node, "corrupt expression tree");
  }

  static double call(const Node& node, double a, double x) {
    double r = 0.0;
    switch (node.fn) {
      case Fn::Sin: r = std::sin(a); break;
      case Fn::Cos: r = std::cos(a); break;
      case Fn::Tan: r = std::tan(a); break;
      case Fn::Exp: r = std::exp(a); break;
      case Fn::Log:
        if (!(a > 0.0)) fault(node, "log of non-positive value at x = " + std::to_string(x));
        r = std::log(a);
        break;
      case Fn::Sqrt:
        if (a < 0.0) fault(node, "sqrt of negative value at x = " + std::to_string(x));
        r = std::sqrt(a);
        break;
      case Fn::Abs: r = std::abs(a); break;
      case Fn::Sinh: r = std::sinh(a); break;
      case Fn::Cosh: r = std::cosh(a); break;
    }
    if (!std::isfinite(r)) fault(node, "non-finite result at x = " + std::to_string(x));
    return r;
  }

  std::unique_ptr<Node> root_;
  std::string source_;
};

namespace detail {

class ExpressionParser {
 public:
  explicit ExpressionParser(std::string_view src) : src_(src) {}

  std::unique_ptr<Expression::Node> parse() {
    auto root = expr();
    skip_space();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return root;
  }

 private:
  using NodePtr = std::unique_ptr<Expression::Node>;
  using Op = Expression::Op;

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(pos_, what); }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  static NodePtr make(Op op, std::size_t offset, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
    auto node = std::make_unique<Expression::Node>();
    node->op = op;
    node->offset = offset;
    node->lhs = std::move(lhs);
    node->rhs = std::move(rhs);
    return node;
  }

  NodePtr expr() {
    auto lhs = term();
    for (char c = peek(); c == '+' || c == '-'; c = peek()) {
      const std::size_t at = pos_++;
      lhs = make(c == '+' ? Op::Add : Op::Sub, at, std::move(lhs), term());
    }
    return lhs;
  }

  NodePtr term() {
    auto lhs = factor();
    for (char c = peek(); c == '*' || c == '/'; c = peek()) {
      const std::size_t at = pos_++;
      lhs = make(c == '*' ? Op::Mul : Op::Div, at, std::move(lhs), factor());
    }
    return lhs;
  }

  NodePtr factor() {
    auto lhs = base();
    if (peek() == '^') {
      const std::size_t at = pos_++;
      return make(Op::Pow, at, std::move(lhs), factor());
    }
    return lhs;
  }

  NodePtr base() {
    const char c = peek();
    const std::size_t at = pos_;
    if (c == '\0') fail("unexpected end of input");
    if (c == '-') {
      ++pos_;
      return make(Op::Neg, at, base());
    }
    if (c == '(') {
      ++pos_;
      auto inner = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  NodePtr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t count = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_;
        ++count;
      }
      return count;
    };
    std::size_t mantissa = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) {
      pos_ = start;
      fail("malformed number");
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      const std::size_t mark = pos_;
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (digits() == 0) {
        pos_ = mark;
        fail("malformed exponent");
      }
    }
    auto node = make(Op::Number, start);
    node->value = std::stod(std::string(src_.substr(start, pos_ - start)));
    return node;
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    const std::string_view name = src_.substr(start, pos_ - start);
    if (name == "x") return make(Op::Var, start);
    if (name == "pi") {
      auto node = make(Op::Number, start);
      node->value = std::numbers::pi;
      return node;
    }
    Expression::Fn fn{};
    if (!lookup(name, fn)) {
      pos_ = start;
      fail("unknown identifier '" + std::string(name) + "'");
    }
    if (peek() != '(') fail("expected '(' after function name");
    ++pos_;
    auto arg = expr();
    if (peek() != ')') fail("expected ')'");
    ++pos_;
    auto node = make(Op::Call, start, std::move(arg));
    node->fn = fn;
    return node;
  }

  static bool lookup(std::string_view name, Expression::Fn& fn) {
    using Fn = Expression::Fn;
    static constexpr std::pair<std::string_view, Fn> table[] = {
        {"sin", Fn::Sin},   {"cos", Fn::Cos},   {"tan", Fn::Tan},
        {"exp", Fn::Exp},   {"log", Fn::Log},   {"sqrt", Fn::Sqrt},
        {"abs", Fn::Abs},   {"sinh", Fn::Sinh}, {"cosh", Fn::Cosh},
    };
    for (const auto& [key, value] : table) {
      if (key == name) {
        fn = value;
        return true;
      }
    }
    return false;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Expression parse_expression(std::string_view src) {
  return Expression(detail::ExpressionParser(src).parse(), std::string(src));
}

/// Parses `src` and samples it at every grid node.
inline RealField eval_expression(std::string_view src, const PeriodicGrid& grid) {
  const Expression expr = parse_expression(src);
  return grid.sample([&](double x) { return expr(x); });
}

}  // namespace geohydro
