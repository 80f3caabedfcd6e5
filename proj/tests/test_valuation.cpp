#include <gtest/gtest.h>

#include <random>

#include "jobmatch/valuation.hpp"

using namespace jobmatch;

namespace {

constexpr auto kInc = Direction::Increasing;
constexpr auto kDec = Direction::Decreasing;

ValuationFn parse(const char* text, Salary lo, Salary hi, Direction d) { return parse_valuation(text, {lo, hi}, d); }

}  // namespace

TEST(Valuation, Construction) {
  EXPECT_EQ(parse("2*z + 3", 0, 5, kInc)(1), 5);
  EXPECT_EQ(parse("z^3 - 4", 0, 4, kInc)(2), 4);
  try {
    parse("1 - z", 0, 5, kInc);
    FAIL() << "expected MonotonicityError";
  } catch (const MonotonicityError& e) {
    EXPECT_EQ(e.z(), 0);
  }
}

TEST(Valuation, MonotonicityReportsFirstFailure) {
  try {
    parse("(z - 3)^2", 0, 6, kInc);  // decreasing until 3
    FAIL();
  } catch (const MonotonicityError& e) {
    EXPECT_EQ(e.z(), 0);
  }
  try {
    parse("(z - 3)^2", 3, 8, kDec);
    FAIL();
  } catch (const MonotonicityError& e) {
    EXPECT_EQ(e.z(), 3);
  }
  // flat step is not strict
  try {
    ValuationFn::from_table({{0, 1}, {1, 2}, {2, 2}, {3, 4}}, {0, 3}, kInc);
    FAIL();
  } catch (const MonotonicityError& e) {
    EXPECT_EQ(e.z(), 1);
  }
  EXPECT_NO_THROW(parse("(z - 3)^2", 3, 8, kInc));
  EXPECT_NO_THROW(parse("7", 4, 4, kInc));  // a single point is trivially monotone
}

TEST(Valuation, Eval) {
  EXPECT_EQ(parse("3 - z", 0, 3, kDec)(3), 0);
  const auto t = ValuationFn::from_table({{0, -2}, {1, 0}, {2, 3}}, {0, 2}, kInc);
  EXPECT_EQ(t(1), 0);
  EXPECT_TRUE(t.is_table());
  EXPECT_FALSE(t.expression().has_value());
  const auto f = parse("2*z + 3", 0, 5, kInc);
  EXPECT_THROW(f.eval(-1), DomainError);
  EXPECT_THROW(f.eval(6), DomainError);
  EXPECT_EQ(f.domain(), (IntInterval{0, 5}));
  EXPECT_EQ(f.direction(), kInc);
  EXPECT_EQ(f.values().size(), 6u);
}

TEST(Valuation, TableMustCoverDomainExactly) {
  EXPECT_THROW(ValuationFn::from_table({{0, 1}, {2, 3}}, {0, 2}, kInc), DomainError);
  EXPECT_THROW(ValuationFn::from_table({{0, 1}, {1, 2}, {2, 3}, {3, 4}}, {0, 2}, kInc), DomainError);
}

TEST(Valuation, NonFiniteAndOversizedDomains) {
  EXPECT_THROW(parse("z", 1, 0, kInc), std::invalid_argument);
  EXPECT_THROW(parse("z", 0, static_cast<Salary>(kMaxDomainSize), kInc), std::invalid_argument);
  EXPECT_THROW(parse("(z + 1000)^200", 0, 2, kInc), DomainError);  // overflows to infinity
}

TEST(Valuation, LeastArgReaching) {
  const auto id = parse("z", 0, 5, kInc);
  EXPECT_EQ(least_arg_reaching(id, 3), 3);
  EXPECT_EQ(least_arg_reaching(parse("z^2", 0, 5, kInc), 10), 4);
  EXPECT_EQ(least_arg_reaching(id, 9), std::nullopt);
  EXPECT_EQ(least_arg_reaching(id, -100), 0);
  EXPECT_EQ(least_arg_reaching(id, 1, {3, 5}), 3);
  EXPECT_THROW(least_arg_reaching(parse("4 - z", 0, 5, kDec), 0), std::invalid_argument);
}

TEST(Valuation, GreatestArgReaching) {
  EXPECT_EQ(greatest_arg_reaching(parse("4 - z", 0, 5, kDec), 0), 4);
  EXPECT_EQ(greatest_arg_reaching(parse("10 - z", 0, 5, kDec), 0), 5);
  EXPECT_EQ(greatest_arg_reaching(parse("-1 - z", 0, 5, kDec), 0), std::nullopt);
  EXPECT_EQ(greatest_arg_reaching(parse("4 - z", 0, 5, kDec), 0, {0, 2}), 2);
  EXPECT_EQ(greatest_arg_reaching(parse("4 - z", 0, 5, kDec), 0, {5, 4}), std::nullopt);
  EXPECT_THROW(greatest_arg_reaching(parse("z", 0, 5, kInc), 0), std::invalid_argument);
}

TEST(Valuation, ToString) {
  EXPECT_EQ(ValuationFn::from_table({{0, -2}, {1, 0.5}}, {0, 1}, kInc).to_string(), "{0: -2, 1: 0.5}");
  const auto f = parse("2*z + 3", 0, 5, kInc);
  EXPECT_EQ(parse_valuation(f.to_string(), {0, 5}, kInc)(4), 11);
}

// Binary searches agree with a linear scan on random monotone tables.
TEST(ValuationProperty, SearchesMatchLinearScan) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> step(1, 4), len(1, 12), start(-10, 10), target(-30, 30);
  for (int k = 0; k < 3000; ++k) {
    const Salary lo = start(rng);
    const Salary hi = lo + len(rng) - 1;
    std::map<Salary, double> up, down;
    double v = start(rng), w = start(rng);
    for (Salary z = lo; z <= hi; ++z) {
      up[z] = v;
      down[z] = w;
      v += step(rng) / 2.0;
      w -= step(rng) / 2.0;
    }
    const auto f = ValuationFn::from_table(up, {lo, hi}, kInc);
    const auto g = ValuationFn::from_table(down, {lo, hi}, kDec);
    const double t = target(rng) / 2.0;
    std::optional<Salary> least, greatest;
    for (Salary z = lo; z <= hi; ++z) {
      if (!least && up[z] >= t) least = z;
      if (down[z] >= t) greatest = z;
    }
    ASSERT_EQ(least_arg_reaching(f, t), least);
    ASSERT_EQ(greatest_arg_reaching(g, t), greatest);
  }
}
