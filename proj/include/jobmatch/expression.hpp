#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace jobmatch {

/// Thrown when an expression string does not conform to the grammar.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, std::string expected, std::string found);

  std::size_t position() const noexcept { return position_; }
  const std::string& expected() const noexcept { return expected_; }
  const std::string& found() const noexcept { return found_; }

 private:
  std::size_t position_;
  std::string expected_;
  std::string found_;
};

/// Immutable arithmetic expression over the single integer variable `z`.
///
/// Grammar:
///   expr   := term (("+"|"-") term)*
///   term   := factor (("*"|"/") factor)*
///   factor := "-" factor | base ("^" uint)?
///   base   := "z" | number | "(" expr ")"
///
/// A leading minus applies to the whole factor, so `-z^2` and `-(z)^2` both
/// mean -(z^2). Divisors must be constant and nonzero.
class Expression {
 public:
  enum class Op { Variable, Constant, Negate, Add, Subtract, Multiply, Divide, Power };

  static Expression parse(std::string_view text);
  static Expression variable();
  static Expression constant(double value);

  double evaluate(double z) const;

  /// Canonical text form; parsing it yields an extensionally equal expression.
  std::string to_string() const;

  bool depends_on_variable() const;
  Op op() const;

 private:
  struct Node;
  explicit Expression(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

  std::shared_ptr<const Node> root_;

  friend class ExpressionParser;
};

}  // namespace jobmatch
