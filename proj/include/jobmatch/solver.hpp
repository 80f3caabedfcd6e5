#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "jobmatch/market.hpp"

namespace jobmatch {

/// How firms matched in the previous round constrain the next matching.
enum class FloorPolicy {
  Occupancy,  ///< keep at least as many workers as before
  NonEmpty,   ///< keep at least one worker
};

/// Which preferred pairs count as rejected after a matching.
enum class RejectionRule {
  /// Preferred pairs of workers left without a job.
  UnmatchedWorkers,
  /// Every preferred pair not in the matching, including the other top
  /// choices of a worker who is matched to a firm it values equally. Such a
  /// pair can sit at its minimum salary while its firm values it strictly
  /// above the firm's payoff, so the clamp check on dropped pairs may fail.
  AllUnmatchedPairs,
};

struct SolverConfig {
  FloorPolicy floor_policy = FloorPolicy::Occupancy;
  RejectionRule rejection = RejectionRule::UnmatchedWorkers;
  /// Check the algorithm's structural invariants at every step and throw
  /// InvariantViolation when one fails.
  bool assert_invariants = true;
};

class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by step() on a state whose rejection set is already empty.
class SolverTerminated : public std::logic_error {
 public:
  SolverTerminated() : std::logic_error("terminated") {}
};

/// Dense subset of pair indices; iteration is in index (lexicographic) order.
class PairSet {
 public:
  PairSet() = default;
  explicit PairSet(std::size_t universe) : flags_(universe, 0) {}

  bool contains(PairIndex e) const { return flags_.at(e) != 0; }
  void insert(PairIndex e);
  void erase(PairIndex e);
  void clear();
  std::size_t size() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }
  std::vector<PairIndex> members() const;
  bool is_subset_of(const PairSet& other) const;

  friend bool operator==(const PairSet&, const PairSet&) = default;

 private:
  std::vector<char> flags_;
  std::size_t count_ = 0;
};

enum class TraceKind { Init, Match, Reject, SalaryCut, PruneL, PruneW0, Terminate };

std::string_view to_string(TraceKind kind);
std::optional<TraceKind> trace_kind_from_string(std::string_view text);

/// One algorithm action. Which optional fields are set depends on the kind:
///   init       pair, new (initial salary)
///   match      pair, new (salary), r (firm payoff after matching)
///   reject     pair, new (salary), r
///   salary_cut pair, old, new, m, r (firm payoff the cut was computed against)
///   prune_L    pair, new (clamped salary), r
///   prune_W0   pair, new (salary at which the worker stops accepting)
///   terminate  no payload
struct TraceEvent {
  std::size_t iteration = 0;
  TraceKind kind = TraceKind::Init;
  std::optional<PairIndex> pair;
  std::optional<FirmIndex> firm;
  std::optional<Salary> old_value;
  std::optional<Salary> new_value;
  std::optional<Salary> m;
  std::optional<double> r;

  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

using Trace = std::vector<TraceEvent>;

/// Complete algorithm state between rounds.
struct SolverState {
  SalaryVector salaries;
  PairSet worker_unacceptable;  // pairs the worker refuses at the current salary
  PairSet firm_unacceptable;    // pairs the firm refuses, or dropped after an infeasible cut
  PairSet acceptable;           // all pairs minus the two sets above
  std::vector<std::optional<double>> best_value;  // per worker; empty when no acceptable pair
  PairSet preferred;  // acceptable pairs attaining the worker's best value
  PairSet eligible;   // preferred pairs whose firm value reaches the firm's payoff
  std::vector<std::size_t> previous_occupancy;  // per firm, from the last matching
  JobAllocation allocation;
  std::vector<double> firm_payoffs;
  PairSet rejected;  // preferred pairs left unmatched
  std::size_t iteration = 0;
  bool matched = false;

  bool terminated() const noexcept { return matched && rejected.empty(); }

  friend bool operator==(const SolverState&, const SolverState&) = default;
};

/// Initial salaries (the highest the firm accepts) and derived pair sets.
SolverState init_state(const MarketInstance& market, Trace* trace = nullptr);

/// Matches over the eligible pairs and recomputes firm payoffs and rejections.
void propose_and_match(const MarketInstance& market, SolverState& state, const SolverConfig& config = {},
                       Trace* trace = nullptr);

/// Smallest positive cut m with g(p - m) >= firm_payoff inside the salary
/// range, or p - a + 1 when no such cut exists.
Salary compute_salary_cut(const MarketInstance& market, PairIndex pair, Salary current_salary, double firm_payoff);

/// Lowers the salary of every rejected pair and prunes pairs that became
/// infeasible or unacceptable to the worker.
void update_salaries_and_prune(const MarketInstance& market, SolverState& state, const SolverConfig& config = {},
                               Trace* trace = nullptr);

/// One round: cut, prune, rematch. A state that has never been matched gets
/// its initial matching first. Throws SolverTerminated on a finished state.
void step(const MarketInstance& market, SolverState& state, const SolverConfig& config = {},
          Trace* trace = nullptr);

/// |E| + sum(b - a) + 1.
std::size_t iteration_bound(const MarketInstance& market);

struct RunResult {
  Outcome outcome;
  Trace trace;
  std::size_t iterations = 0;
  SolverState final_state;
};

RunResult run(const MarketInstance& market, const SolverConfig& config = {});

}  // namespace jobmatch
