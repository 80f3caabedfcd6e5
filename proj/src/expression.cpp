#include "jobmatch/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <utility>

namespace jobmatch {

namespace {

std::string describe_position(std::string_view text, std::size_t pos) {
  if (pos >= text.size()) return "end of input";
  return std::string("'") + text[pos] + "'";
}

int precedence(Expression::Op op, double value) {
  switch (op) {
    case Expression::Op::Add:
    case Expression::Op::Subtract:
      return 1;
    case Expression::Op::Multiply:
    case Expression::Op::Divide:
      return 2;
    case Expression::Op::Negate:
      return 3;
    case Expression::Op::Power:
      return 4;
    case Expression::Op::Constant:
      return value < 0 || std::signbit(value) ? 3 : 5;
    case Expression::Op::Variable:
      return 5;
  }
  return 0;
}

std::string format_number(double value) {
  char buf[512];
  auto res = std::to_chars(buf, buf + sizeof(buf), std::fabs(value), std::chars_format::fixed);
  std::string digits(buf, res.ptr);
  return std::signbit(value) ? "-" + digits : digits;
}

double integer_power(double base, unsigned exponent) {
  double result = 1.0;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    base *= base;
    exponent >>= 1U;
  }
  return result;
}

}  // namespace

ParseError::ParseError(std::size_t position, std::string expected, std::string found)
    : std::runtime_error("syntax error at position " + std::to_string(position) + ": expected " +
                         expected + ", found " + found),
      position_(position),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

struct Expression::Node {
  Op op;
  double value = 0.0;
  unsigned exponent = 0;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;

  double evaluate(double z) const {
    switch (op) {
      case Op::Variable:
        return z;
      case Op::Constant:
        return value;
      case Op::Negate:
        return -lhs->evaluate(z);
      case Op::Add:
        return lhs->evaluate(z) + rhs->evaluate(z);
      case Op::Subtract:
        return lhs->evaluate(z) - rhs->evaluate(z);
      case Op::Multiply:
        return lhs->evaluate(z) * rhs->evaluate(z);
      case Op::Divide:
        return lhs->evaluate(z) / rhs->evaluate(z);
      case Op::Power:
        return integer_power(lhs->evaluate(z), exponent);
    }
    return 0.0;
  }

  bool has_variable() const {
    if (op == Op::Variable) return true;
    return (lhs && lhs->has_variable()) || (rhs && rhs->has_variable());
  }

  std::string print() const {
    const int own = precedence(op, value);
    auto child = [](const Node& n, int min_prec) {
      std::string s = n.print();
      return precedence(n.op, n.value) < min_prec ? "(" + s + ")" : s;
    };
    switch (op) {
      case Op::Variable:
        return "z";
      case Op::Constant:
        return format_number(value);
      case Op::Negate:
        return "-" + child(*lhs, own);
      case Op::Add:
        // right operands keep their parentheses: floating point is not associative
        return child(*lhs, own) + " + " + child(*rhs, own + 1);
      case Op::Subtract:
        return child(*lhs, own) + " - " + child(*rhs, own + 1);
      case Op::Multiply:
        return child(*lhs, own) + "*" + child(*rhs, own + 1);
      case Op::Divide:
        return child(*lhs, own) + "/" + child(*rhs, own + 1);
      case Op::Power:
        // the base of a power must be an atom
        return child(*lhs, 5) + "^" + std::to_string(exponent);
    }
    return {};
  }
};

class ExpressionParser {
 public:
  explicit ExpressionParser(std::string_view text) : text_(text) {}

  Expression parse() {
    auto root = parse_expr();
    skip_space();
    if (pos_ != text_.size()) fail("operator or end of input");
    return Expression(std::move(root));
  }

 private:
  using NodePtr = std::shared_ptr<const Expression::Node>;
  using Op = Expression::Op;

  static NodePtr make(Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
    auto n = std::make_shared<Expression::Node>();
    n->op = op;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
  }

  [[noreturn]] void fail(const std::string& expected) const {
    throw ParseError(pos_, expected, describe_position(text_, pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = make(Op::Add, lhs, parse_term());
      } else if (accept('-')) {
        lhs = make(Op::Subtract, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_factor();
    for (;;) {
      if (accept('*')) {
        lhs = make(Op::Multiply, lhs, parse_factor());
      } else if (accept('/')) {
        const std::size_t divisor_pos = pos_;
        NodePtr rhs = parse_factor();
        if (rhs->has_variable() || rhs->evaluate(0.0) == 0.0 || !std::isfinite(rhs->evaluate(0.0))) {
          pos_ = divisor_pos;
          skip_space();
          fail("nonzero numeric literal divisor");
        }
        lhs = make(Op::Divide, lhs, rhs);
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_factor() {
    if (accept('-')) return make(Op::Negate, parse_factor());
    NodePtr base = parse_base();
    if (accept('^')) {
      skip_space();
      const std::size_t start = pos_;
      unsigned exponent = 0;
      auto res = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), exponent);
      if (res.ec != std::errc() || res.ptr == text_.data() + start) fail("non-negative integer exponent");
      pos_ = static_cast<std::size_t>(res.ptr - text_.data());
      auto n = std::make_shared<Expression::Node>();
      n->op = Op::Power;
      n->exponent = exponent;
      n->lhs = std::move(base);
      return n;
    }
    return base;
  }

  NodePtr parse_base() {
    skip_space();
    if (pos_ >= text_.size()) fail("'z', number or '('");
    const char c = text_[pos_];
    if (c == 'z') {
      ++pos_;
      return make(Op::Variable);
    }
    if (c == '(') {
      ++pos_;
      NodePtr inner = parse_expr();
      if (!accept(')')) fail("')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    fail("'z', number or '('");
  }

  NodePtr parse_number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("digit");
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    std::string_view literal = text_.substr(start, pos_ - start);
    if (literal == ".") {
      pos_ = start;
      fail("number");
    }
    double value = 0.0;
    auto res = std::from_chars(literal.data(), literal.data() + literal.size(), value);
    if (res.ec != std::errc() || res.ptr != literal.data() + literal.size()) {
      pos_ = start;
      fail("number");
    }
    auto n = std::make_shared<Expression::Node>();
    n->op = Op::Constant;
    n->value = value;
    return n;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

Expression Expression::parse(std::string_view text) { return ExpressionParser(text).parse(); }

Expression Expression::variable() {
  auto n = std::make_shared<Node>();
  n->op = Op::Variable;
  return Expression(std::move(n));
}

Expression Expression::constant(double value) {
  auto n = std::make_shared<Node>();
  n->op = Op::Constant;
  n->value = value;
  return Expression(std::move(n));
}

double Expression::evaluate(double z) const { return root_->evaluate(z); }

std::string Expression::to_string() const { return root_->print(); }

bool Expression::depends_on_variable() const { return root_->has_variable(); }

Expression::Op Expression::op() const { return root_->op; }

}  // namespace jobmatch
