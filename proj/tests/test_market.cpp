#include <gtest/gtest.h>

#include <algorithm>

#include "jobmatch/market.hpp"
#include "oracles.hpp"

using namespace jobmatch;
using jobmatch::testing::InstanceBuilder;

namespace {

bool has_issue(const ValidationError& e, const std::string& needle) {
  return std::any_of(e.issues().begin(), e.issues().end(), [&](const ValidationIssue& i) {
    return (i.subject + ": " + i.message).find(needle) != std::string::npos;
  });
}

ValidationError validation_failure(const RawInstance& raw) {
  try {
    validate_instance(raw);
  } catch (const ValidationError& e) {
    return e;
  }
  ADD_FAILURE() << "instance unexpectedly valid";
  return ValidationError({});
}

}  // namespace

TEST(Market, WellFormedInstanceIsAccepted) {
  const auto m = InstanceBuilder()
                     .worker("w2")
                     .worker("w1")
                     .firm("A")
                     .pair("w2", "A", 0, 3, {"z"}, {"3 - z"})
                     .pair("w1", "A", 0, 3, {"z"}, {"3 - z"})
                     .build();
  ASSERT_EQ(m.workers(), (std::vector<std::string>{"w1", "w2"}));
  ASSERT_EQ(m.pairs().size(), 2u);
  EXPECT_EQ(m.pair(0).worker, 0u);  // sorted by worker id
  EXPECT_EQ(m.pair_label(1), "(w2,A)");
  EXPECT_EQ(m.find_pair(1, 0), 1u);
  EXPECT_EQ(m.total_salary_span(), 6);
  EXPECT_EQ(m.worker_index("w2"), 1u);
  EXPECT_EQ(m.firm_index("B"), std::nullopt);
}

TEST(Market, BoundsViolation) {
  InstanceBuilder b;
  b.worker("w1").firm("A").pair("w1", "A", 5, 3, {"z"}, {"-z"});
  EXPECT_TRUE(has_issue(validation_failure(b.raw()), "min_salary 5 exceeds max_salary 3"));
}

TEST(Market, QuotaViolation) {
  InstanceBuilder b;
  b.worker("w1").firm("A", 0).pair("w1", "A", 0, 3, {"z"}, {"-z"});
  EXPECT_TRUE(has_issue(validation_failure(b.raw()), "quota"));
}

TEST(Market, EveryIssueIsReported) {
  InstanceBuilder b;
  b.worker("w1")
      .worker("w1")
      .firm("A", 0)
      .pair("w1", "B", 0, 3, {"z"}, {"-z"})
      .pair("w9", "A", 0, 3, {"z"}, {"-z"})
      .pair("w1", "A", 0, 3, {"3 - z"}, {"z"})
      .pair("w1", "A", 0, 3, {"z"}, {"-z"});
  const auto e = validation_failure(b.raw());
  EXPECT_TRUE(has_issue(e, "worker w1: duplicate id"));
  EXPECT_TRUE(has_issue(e, "quota"));
  EXPECT_TRUE(has_issue(e, "unknown firm"));
  EXPECT_TRUE(has_issue(e, "unknown worker"));
  EXPECT_TRUE(has_issue(e, "worker_valuation"));
  EXPECT_TRUE(has_issue(e, "firm_valuation"));
  EXPECT_TRUE(has_issue(e, "duplicate pair"));
}

TEST(Market, SyntaxErrorInValuation) {
  InstanceBuilder b;
  b.worker("w1").firm("A").pair("w1", "A", 0, 3, {"z +"}, {"-z"});
  EXPECT_TRUE(has_issue(validation_failure(b.raw()), "worker_valuation"));
}

class PayoffTest : public ::testing::Test {
 protected:
  // w1, w2 at firm A (quota 2); firm values 3 and 5 at salary 0; f(p) = 2 at p = 2 for w1.
  MarketInstance market = InstanceBuilder()
                              .worker("w1")
                              .worker("w2")
                              .firm("A", 2)
                              .pair("w1", "A", 0, 4, {"z"}, {"3 - z"})
                              .pair("w2", "A", 0, 4, {"z"}, {"5 - z"})
                              .build();
};

TEST_F(PayoffTest, WorkerPayoff) {
  JobAllocation x(2, 1);
  x.assign(0, 0);
  const SalaryVector p({2, 0});
  const auto q = payoff_q(x, p, market);
  EXPECT_EQ(q[0], 2);  // matched: f(p)
  EXPECT_EQ(q[1], 0);  // unmatched: 0
  const auto none = payoff_q(JobAllocation(2, 1), p, market);
  EXPECT_EQ(none, (std::vector<double>{0, 0}));
}

TEST_F(PayoffTest, FirmPayoff) {
  const SalaryVector p({0, 0});
  JobAllocation full(2, 1);
  full.assign(0, 0);
  full.assign(1, 0);
  EXPECT_EQ(payoff_r(full, p, market)[0], 3);  // full quota: min(3, 5)
  JobAllocation partial(2, 1);
  partial.assign(1, 0);
  EXPECT_EQ(payoff_r(partial, p, market)[0], 0);  // below quota
  EXPECT_EQ(payoff_r(JobAllocation(2, 1), p, market)[0], 0);
}

TEST(Market, EmptyFirmWithQuotaOneHasZeroPayoff) {
  const auto m = InstanceBuilder().worker("w1").firm("A").pair("w1", "A", 0, 1, {"z"}, {"5 - z"}).build();
  EXPECT_EQ(payoff_r(JobAllocation(1, 1), SalaryVector({0}), m)[0], 0);
}

TEST(Market, AllocationBookkeeping) {
  JobAllocation x(3, 2);
  x.assign(0, 1);
  x.assign(2, 1);
  EXPECT_EQ(x.size(), 2u);
  EXPECT_EQ(x.occupancy(1), 2u);
  EXPECT_EQ(x.hired_by(1), (std::vector<WorkerIndex>{0, 2}));
  EXPECT_THROW(x.assign(0, 0), std::logic_error);
  x.unassign(0);
  EXPECT_EQ(x.firm_of(0), std::nullopt);
  EXPECT_EQ(x.occupancy(1), 1u);
}

TEST(Market, CheckAllocation) {
  const auto m = InstanceBuilder()
                     .worker("w1")
                     .worker("w2")
                     .firm("A")
                     .firm("B")
                     .pair("w1", "A", 0, 1, {"z"}, {"5 - z"})
                     .pair("w2", "A", 0, 1, {"z"}, {"5 - z"})
                     .build();
  JobAllocation over(2, 2);
  over.assign(0, 0);
  over.assign(1, 0);
  EXPECT_FALSE(check_allocation(over, m).empty());
  JobAllocation inadmissible(2, 2);
  inadmissible.assign(0, 1);
  EXPECT_FALSE(check_allocation(inadmissible, m).empty());
  EXPECT_THROW(matched_pairs(inadmissible, m), std::invalid_argument);
  JobAllocation ok(2, 2);
  ok.assign(1, 0);
  EXPECT_TRUE(check_allocation(ok, m).empty());
  EXPECT_EQ(matched_pairs(ok, m), (std::vector<PairIndex>{1}));
}

TEST(Market, SalaryFeasibility) {
  const auto m = InstanceBuilder().worker("w1").firm("A").pair("w1", "A", 2, 4, {"z"}, {"5 - z"}).build();
  EXPECT_TRUE(SalaryVector({2}).is_feasible(m));
  EXPECT_FALSE(SalaryVector({5}).is_feasible(m));
  EXPECT_FALSE(SalaryVector(std::vector<Salary>{}).is_feasible(m));
}
