#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "jobmatch/market.hpp"

namespace jobmatch {

struct AssignmentEdge {
  WorkerIndex worker = 0;
  FirmIndex firm = 0;
  double weight = 0.0;
  /// Edge belonged to the previous allocation (first tie-break).
  bool previous = false;
};

/// Degree-constrained bipartite matching: each worker takes at most one edge,
/// firm j takes between floors[j] and quotas[j] edges. Worker and firm indices
/// are expected to follow lexicographic id order; the final tie-break relies
/// on it.
struct AssignmentProblem {
  std::size_t worker_count = 0;
  std::vector<int> quotas;
  std::vector<int> floors;
  std::vector<AssignmentEdge> edges;
};

class AssignmentInfeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Returns the allocation that, in lexicographic priority,
///   1. meets every floor,
///   2. maximizes the number of matched workers,
///   3. maximizes the total edge weight,
///   4. keeps as many previous edges as possible,
///   5. prefers the edge set that includes the earliest (worker, firm) edges.
/// Throws AssignmentInfeasible if the floors cannot all be met.
JobAllocation solve_assignment(const AssignmentProblem& problem);

struct AssignmentReport {
  bool structurally_valid = true;
  bool floors_met = true;
  bool cardinality_maximal = true;
  bool weight_maximal = true;
  /// True when weight optimality was established by full enumeration; false
  /// when only single-edge and two-edge exchanges were examined.
  bool weight_check_exhaustive = true;
  std::string detail;

  bool ok() const noexcept { return structurally_valid && floors_met && cardinality_maximal && weight_maximal; }
};

/// Problems with more edges than this are checked by local exchanges only.
inline constexpr std::size_t kExhaustiveAssignmentEdges = 20;

AssignmentReport verify_assignment_conditions(const AssignmentProblem& problem, const JobAllocation& allocation);

}  // namespace jobmatch
