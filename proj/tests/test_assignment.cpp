#include <gtest/gtest.h>

#include <random>

#include "jobmatch/assignment.hpp"
#include "oracles.hpp"

using namespace jobmatch;
using jobmatch::testing::assignment_value;
using jobmatch::testing::brute_force_assignment;

namespace {

JobAllocation alloc_of(std::size_t nw, std::size_t nf, std::initializer_list<std::pair<WorkerIndex, FirmIndex>> es) {
  JobAllocation x(nw, nf);
  for (auto [w, f] : es) x.assign(w, f);
  return x;
}

// Worker 0 = w1, worker 1 = w2, firm 0 = A.
AssignmentProblem example_one() { return {2, {1}, {0}, {{0, 0, 5.0}, {1, 0, 3.0}}}; }

}  // namespace

TEST(Assignment, HeavierEdgeWins) {
  const auto x = solve_assignment(example_one());
  EXPECT_EQ(x, alloc_of(2, 1, {{0, 0}}));
}

TEST(Assignment, NoEdges) {
  const auto x = solve_assignment({3, {1, 2}, {}, {}});
  EXPECT_TRUE(x.empty());
  EXPECT_EQ(x.worker_count(), 3u);
}

TEST(Assignment, FloorOutranksWeight) {
  // w1 is A's only incident worker and A must keep one worker.
  const AssignmentProblem p{1, {1, 1}, {1, 0}, {{0, 0, 0.0}, {0, 1, 9.0}}};
  EXPECT_EQ(solve_assignment(p), alloc_of(1, 2, {{0, 0}}));
}

TEST(Assignment, CardinalityOutranksWeight) {
  // One heavy edge or two light ones.
  const AssignmentProblem p{2, {1, 1}, {}, {{0, 0, 10.0}, {0, 1, 1.0}, {1, 0, 1.0}}};
  EXPECT_EQ(solve_assignment(p), alloc_of(2, 2, {{0, 1}, {1, 0}}));
}

TEST(Assignment, NegativeWeightsStillMaximizeCardinality) {
  const AssignmentProblem p{2, {2}, {}, {{0, 0, -3.0}, {1, 0, -1.0}}};
  EXPECT_EQ(solve_assignment(p).size(), 2u);
}

TEST(Assignment, TieBreaks) {
  // Equal weights: lower worker index first.
  EXPECT_EQ(solve_assignment({2, {1}, {}, {{0, 0, 0.0}, {1, 0, 0.0}}}), alloc_of(2, 1, {{0, 0}}));
  // A previous edge is kept over the lexicographic choice.
  EXPECT_EQ(solve_assignment({2, {1}, {}, {{0, 0, 0.0}, {1, 0, 0.0, true}}}), alloc_of(2, 1, {{1, 0}}));
  // Edge order in the input does not matter.
  EXPECT_EQ(solve_assignment({2, {1}, {}, {{1, 0, 0.0}, {0, 0, 0.0}}}), alloc_of(2, 1, {{0, 0}}));
}

TEST(Assignment, InfeasibleFloors) {
  EXPECT_THROW(solve_assignment({1, {1}, {1}, {}}), AssignmentInfeasible);
  EXPECT_THROW(solve_assignment({1, {2}, {2}, {{0, 0, 1.0}}}), AssignmentInfeasible);
}

TEST(AssignmentVerify, OptimalSolutionPasses) {
  const auto p = example_one();
  const auto report = verify_assignment_conditions(p, solve_assignment(p));
  EXPECT_TRUE(report.ok()) << report.detail;
  EXPECT_TRUE(report.weight_check_exhaustive);
}

TEST(AssignmentVerify, LighterEdgeViolatesWeightCondition) {
  const auto report = verify_assignment_conditions(example_one(), alloc_of(2, 1, {{1, 0}}));
  EXPECT_TRUE(report.floors_met);
  EXPECT_TRUE(report.cardinality_maximal);
  EXPECT_FALSE(report.weight_maximal);
  EXPECT_FALSE(report.ok());
}

TEST(AssignmentVerify, UnmetFloor) {
  const AssignmentProblem p{1, {1, 1}, {1, 0}, {{0, 0, 0.0}, {0, 1, 9.0}}};
  const auto report = verify_assignment_conditions(p, alloc_of(1, 2, {{0, 1}}));
  EXPECT_FALSE(report.floors_met);
  EXPECT_FALSE(report.ok());
}

TEST(AssignmentVerify, NonMaximumCardinality) {
  const AssignmentProblem p{2, {1, 1}, {}, {{0, 0, 10.0}, {0, 1, 1.0}, {1, 0, 1.0}}};
  const auto report = verify_assignment_conditions(p, alloc_of(2, 2, {{0, 0}}));
  EXPECT_FALSE(report.cardinality_maximal);
}

TEST(AssignmentVerify, StructuralProblems) {
  const auto p = example_one();
  EXPECT_FALSE(verify_assignment_conditions(p, alloc_of(2, 1, {{0, 0}, {1, 0}})).structurally_valid);  // quota
  const AssignmentProblem q{2, {1, 1}, {}, {{0, 0, 1.0}}};
  EXPECT_FALSE(verify_assignment_conditions(q, alloc_of(2, 2, {{1, 1}})).structurally_valid);  // no such edge
}

namespace {

AssignmentProblem random_problem(std::mt19937_64& rng, std::size_t max_edges) {
  std::uniform_int_distribution<int> nw_d(1, 6), nf_d(1, 4), quota_d(1, 3), weight_d(-6, 12), coin(0, 99);
  AssignmentProblem p;
  p.worker_count = static_cast<std::size_t>(nw_d(rng));
  const std::size_t nf = static_cast<std::size_t>(nf_d(rng));
  for (std::size_t f = 0; f < nf; ++f) p.quotas.push_back(quota_d(rng));
  const int density = 30 + coin(rng) % 70;
  for (std::size_t w = 0; w < p.worker_count; ++w) {
    for (std::size_t f = 0; f < nf; ++f) {
      if (p.edges.size() >= max_edges || coin(rng) >= density) continue;
      p.edges.push_back({w, f, weight_d(rng) / 2.0, false});
    }
  }
  // Floors from a random feasible allocation, marked as previous edges.
  if (coin(rng) < 60) {
    JobAllocation prev(p.worker_count, nf);
    std::vector<int> load(nf, 0);
    for (auto& e : p.edges) {
      if (!prev.firm_of(e.worker) && load[e.firm] < p.quotas[e.firm] && coin(rng) < 50) {
        prev.assign(e.worker, e.firm);
        ++load[e.firm];
        e.previous = true;
      }
    }
    p.floors = load;
  }
  std::shuffle(p.edges.begin(), p.edges.end(), rng);
  return p;
}

}  // namespace

// Engine and exhaustive enumeration agree on the full lexicographic order,
// including both tie-breaks.
TEST(AssignmentProperty, MatchesBruteForce) {
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 1500; ++k) {
    const auto p = random_problem(rng, 14);
    const auto brute = brute_force_assignment(p);
    ASSERT_TRUE(brute.floors_feasible);
    const auto x = solve_assignment(p);
    ASSERT_EQ(assignment_value(p, x), brute.value) << "problem " << k;
    ASSERT_EQ(x, brute.allocation) << "problem " << k;
    ASSERT_TRUE(verify_assignment_conditions(p, x).ok());
  }
}

// verify_assignment_conditions rejects every allocation worse than optimal.
TEST(AssignmentProperty, VerifierRejectsSuboptimal) {
  std::mt19937_64 rng(99);
  int rejected = 0;
  for (int k = 0; k < 400; ++k) {
    const auto p = random_problem(rng, 10);
    const auto best = brute_force_assignment(p).value;
    // drop one matched worker from the optimum, when that loses value
    auto x = solve_assignment(p);
    for (WorkerIndex w = 0; w < p.worker_count; ++w) {
      if (!x.firm_of(w)) continue;
      x.unassign(w);
      const auto v = assignment_value(p, x);
      const auto report = verify_assignment_conditions(p, x);
      if (v.floor_units < best.floor_units || v.cardinality < best.cardinality || v.weight < best.weight) {
        ASSERT_FALSE(report.ok()) << "problem " << k;
        ++rejected;
      }
      break;
    }
  }
  EXPECT_GT(rejected, 100);
}

TEST(AssignmentProperty, LargeProblemsUseLocalCheck) {
  std::mt19937_64 rng(5);
  AssignmentProblem p{12, {2, 2, 2, 3}, {}, {}};
  std::uniform_int_distribution<int> wd(0, 20);
  for (std::size_t w = 0; w < 12; ++w)
    for (std::size_t f = 0; f < 4; ++f) p.edges.push_back({w, f, static_cast<double>(wd(rng)), false});
  const auto report = verify_assignment_conditions(p, solve_assignment(p));
  EXPECT_TRUE(report.ok()) << report.detail;
  EXPECT_FALSE(report.weight_check_exhaustive);
}
