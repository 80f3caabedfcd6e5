#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <string>

#include "jobmatch/expression.hpp"

using jobmatch::Expression;
using jobmatch::ParseError;

namespace {

double eval(const std::string& text, double z) { return Expression::parse(text).evaluate(z); }

}  // namespace

TEST(Expression, Arithmetic) {
  EXPECT_EQ(eval("2*z + 3", 1), 5);
  EXPECT_EQ(eval("z^3 - 4", 2), 4);
  EXPECT_EQ(eval("1 - z", 4), -3);
  EXPECT_EQ(eval("(z - 2)/2", 5), 1.5);
  EXPECT_EQ(eval("3*(9 - z)/2", 1), 12);
  EXPECT_EQ(eval("10 - 2 - 3", 0), 5);  // left associative
  EXPECT_EQ(eval("12 / 3 / 2", 0), 2);
  EXPECT_EQ(eval("2.5 * z", 2), 5);
  EXPECT_EQ(eval("z^0", 7), 1);
}

TEST(Expression, PowerBindsTighterThanUnaryMinus) {
  EXPECT_EQ(eval("-z^2", 3), -9);
  EXPECT_EQ(eval("-(z)^2", 3), -9);
  EXPECT_EQ(eval("(-z)^2", 3), 9);
  EXPECT_EQ(eval("--z", 3), 3);
  EXPECT_EQ(eval("2 - -z", 3), 5);
  EXPECT_EQ(eval("-3 - z", 1), -4);
}

TEST(Expression, WhitespaceIsIgnored) { EXPECT_EQ(eval("  2 *z+   3 ", 1), 5); }

TEST(Expression, ConstantDivisorsOnly) {
  EXPECT_EQ(eval("z / (2*3)", 12), 2);
  EXPECT_THROW(Expression::parse("1 / z"), ParseError);
  EXPECT_THROW(Expression::parse("z / 0"), ParseError);
  EXPECT_THROW(Expression::parse("z / (1 - 1)"), ParseError);
}

TEST(Expression, SyntaxErrorsCarryPosition) {
  try {
    Expression::parse("2 * (z + 1");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 10u);
    EXPECT_EQ(e.found(), "end of input");
  }
  try {
    Expression::parse("z + x");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
  EXPECT_THROW(Expression::parse(""), ParseError);
  EXPECT_THROW(Expression::parse("z ^ -1"), ParseError);
  EXPECT_THROW(Expression::parse("z ^ 1.5"), ParseError);
  EXPECT_THROW(Expression::parse("z z"), ParseError);
  EXPECT_THROW(Expression::parse("1."), ParseError);
}

TEST(Expression, DependsOnVariable) {
  EXPECT_TRUE(Expression::parse("z - z").depends_on_variable());
  EXPECT_FALSE(Expression::parse("3 * (2 - 1)").depends_on_variable());
  EXPECT_EQ(Expression::parse("z + 1").op(), Expression::Op::Add);
}

namespace {

// Random expressions over small integers; divisors are nonzero literals.
std::string random_expression(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 7);
  std::uniform_int_distribution<int> small(0, 9);
  switch (pick(rng)) {
    case 0: return "z";
    case 1: return std::to_string(small(rng)) + (small(rng) < 3 ? ".5" : "");
    case 2: return "-" + random_expression(rng, depth - 1);
    case 3: return "(" + random_expression(rng, depth - 1) + " + " + random_expression(rng, depth - 1) + ")";
    case 4: return random_expression(rng, depth - 1) + " - " + random_expression(rng, depth - 1);
    case 5: return random_expression(rng, depth - 1) + " * " + random_expression(rng, depth - 1);
    case 6: return "(" + random_expression(rng, depth - 1) + ") / " + std::to_string(small(rng) + 1);
    default: return "(" + random_expression(rng, depth - 1) + ")^" + std::to_string(small(rng) % 4);
  }
}

bool same_value(double a, double b) {
  if (std::isnan(a) || std::isnan(b)) return std::isnan(a) && std::isnan(b);
  return a == b;
}

}  // namespace

TEST(ExpressionProperty, PrintedFormReparsesToSameFunction) {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 2000; ++k) {
    const std::string text = random_expression(rng, 4);
    const Expression e = Expression::parse(text);
    const Expression back = Expression::parse(e.to_string());
    EXPECT_EQ(back.to_string(), e.to_string()) << text;
    for (int z = -4; z <= 6; ++z) {
      ASSERT_TRUE(same_value(e.evaluate(z), back.evaluate(z))) << text << " vs " << e.to_string() << " at " << z;
    }
  }
}
