#include "jobmatch/solver.hpp"

#include <algorithm>
#include <array>

#include "jobmatch/assignment.hpp"

namespace jobmatch {

void PairSet::insert(PairIndex e) {
  if (!flags_.at(e)) {
    flags_[e] = 1;
    ++count_;
  }
}

void PairSet::erase(PairIndex e) {
  if (flags_.at(e)) {
    flags_[e] = 0;
    --count_;
  }
}

void PairSet::clear() {
  std::fill(flags_.begin(), flags_.end(), 0);
  count_ = 0;
}

std::vector<PairIndex> PairSet::members() const {
  std::vector<PairIndex> out;
  out.reserve(count_);
  for (PairIndex e = 0; e < flags_.size(); ++e) {
    if (flags_[e]) out.push_back(e);
  }
  return out;
}

bool PairSet::is_subset_of(const PairSet& other) const {
  if (flags_.size() != other.flags_.size()) return false;
  for (PairIndex e = 0; e < flags_.size(); ++e) {
    if (flags_[e] && !other.flags_[e]) return false;
  }
  return true;
}

namespace {

constexpr std::array<std::string_view, 7> kKindNames = {"init",       "match",   "reject",   "salary_cut",
                                                        "prune_L",    "prune_W0", "terminate"};

void emit(Trace* trace, TraceEvent event) {
  if (trace) trace->push_back(std::move(event));
}

void require(bool condition, const std::string& what) {
  if (!condition) throw InvariantViolation(what);
}

// Acceptable set, best values, preferred and eligible sets from the current
// salaries, exclusion sets and firm payoffs.
void refresh_sets(const MarketInstance& market, SolverState& state) {
  const auto& pairs = market.pairs();
  state.acceptable.clear();
  for (PairIndex e = 0; e < pairs.size(); ++e) {
    if (!state.worker_unacceptable.contains(e) && !state.firm_unacceptable.contains(e)) state.acceptable.insert(e);
  }
  state.best_value.assign(market.workers().size(), std::nullopt);
  for (PairIndex e : state.acceptable.members()) {
    const double v = pairs[e].worker_value(state.salaries[e]);
    auto& best = state.best_value[pairs[e].worker];
    if (!best || v > *best) best = v;
  }
  state.preferred.clear();
  state.eligible.clear();
  for (PairIndex e : state.acceptable.members()) {
    const auto& pair = pairs[e];
    if (pair.worker_value(state.salaries[e]) != *state.best_value[pair.worker]) continue;
    state.preferred.insert(e);
    if (pair.firm_value(state.salaries[e]) >= state.firm_payoffs[pair.firm]) state.eligible.insert(e);
  }
}

void check_structure(const MarketInstance& market, const SolverState& state) {
  require(state.salaries.is_feasible(market), "salary vector left its bounds");
  for (PairIndex e = 0; e < market.pairs().size(); ++e) {
    const bool excluded = state.worker_unacceptable.contains(e) || state.firm_unacceptable.contains(e);
    require(excluded != state.acceptable.contains(e),
            "acceptable set differs from the complement of the exclusions at " + market.pair_label(e));
  }
  require(state.eligible.is_subset_of(state.preferred), "eligible set is not inside the preferred set");
  require(state.preferred.is_subset_of(state.acceptable), "preferred set is not inside the acceptable set");
  for (PairIndex e : state.acceptable.members()) {
    const auto& pair = market.pair(e);
    require(pair.worker_value(state.salaries[e]) >= 0 && pair.firm_value(state.salaries[e]) >= 0,
            "acceptable pair " + market.pair_label(e) + " is not mutually acceptable");
  }
}

}  // namespace

std::string_view to_string(TraceKind kind) { return kKindNames[static_cast<std::size_t>(kind)]; }

std::optional<TraceKind> trace_kind_from_string(std::string_view text) {
  for (std::size_t k = 0; k < kKindNames.size(); ++k) {
    if (kKindNames[k] == text) return static_cast<TraceKind>(k);
  }
  return std::nullopt;
}

SolverState init_state(const MarketInstance& market, Trace* trace) {
  const auto& pairs = market.pairs();
  SolverState state;
  std::vector<Salary> salaries(pairs.size());
  state.worker_unacceptable = PairSet(pairs.size());
  state.firm_unacceptable = PairSet(pairs.size());
  state.acceptable = PairSet(pairs.size());
  state.preferred = PairSet(pairs.size());
  state.eligible = PairSet(pairs.size());
  state.rejected = PairSet(pairs.size());
  for (PairIndex e = 0; e < pairs.size(); ++e) {
    const auto& pair = pairs[e];
    salaries[e] = greatest_arg_reaching(pair.firm_valuation, 0.0).value_or(pair.min_salary());
    if (pair.firm_value(salaries[e]) < 0) state.firm_unacceptable.insert(e);
    if (pair.worker_value(salaries[e]) < 0) state.worker_unacceptable.insert(e);
    emit(trace, {.iteration = 0,
                 .kind = TraceKind::Init,
                 .pair = e,
                 .new_value = salaries[e]});
  }
  state.salaries = SalaryVector(std::move(salaries));
  state.previous_occupancy.assign(market.firms().size(), 0);
  state.allocation = JobAllocation(market.workers().size(), market.firms().size());
  state.firm_payoffs.assign(market.firms().size(), 0.0);
  refresh_sets(market, state);
  return state;
}

void propose_and_match(const MarketInstance& market, SolverState& state, const SolverConfig& config, Trace* trace) {
  const auto& pairs = market.pairs();
  const auto& firms = market.firms();

  if (config.assert_invariants && state.matched) {
    for (PairIndex e : matched_pairs(state.allocation, market)) {
      require(state.eligible.contains(e), "previous match " + market.pair_label(e) + " is no longer eligible");
    }
  }

  AssignmentProblem problem;
  problem.worker_count = market.workers().size();
  problem.quotas.reserve(firms.size());
  problem.floors.reserve(firms.size());
  for (FirmIndex f = 0; f < firms.size(); ++f) {
    problem.quotas.push_back(firms[f].quota);
    const auto held = static_cast<int>(state.previous_occupancy[f]);
    problem.floors.push_back(config.floor_policy == FloorPolicy::Occupancy ? held : std::min(held, 1));
  }
  for (PairIndex e : state.eligible.members()) {
    const auto& pair = pairs[e];
    problem.edges.push_back({pair.worker, pair.firm, pair.firm_value(state.salaries[e]),
                             state.allocation.matched(pair.worker, pair.firm)});
  }

  JobAllocation allocation;
  try {
    allocation = solve_assignment(problem);
  } catch (const AssignmentInfeasible& ex) {
    throw InvariantViolation(std::string("matching with floors is infeasible: ") + ex.what());
  }

  std::vector<double> payoffs = payoff_r(allocation, state.salaries, market);
  if (config.assert_invariants) {
    for (FirmIndex f = 0; f < firms.size(); ++f) {
      require(payoffs[f] >= 0, "negative firm payoff for " + firms[f].id);
      if (config.floor_policy == FloorPolicy::Occupancy) {
        require(payoffs[f] >= state.firm_payoffs[f], "payoff of firm " + firms[f].id + " decreased");
      }
    }
  }

  state.allocation = std::move(allocation);
  state.firm_payoffs = std::move(payoffs);
  for (FirmIndex f = 0; f < firms.size(); ++f) state.previous_occupancy[f] = state.allocation.occupancy(f);
  state.rejected.clear();
  for (PairIndex e : state.preferred.members()) {
    const auto& pair = pairs[e];
    const bool rejected = config.rejection == RejectionRule::UnmatchedWorkers
                              ? !state.allocation.firm_of(pair.worker)
                              : !state.allocation.matched(pair.worker, pair.firm);
    if (rejected) state.rejected.insert(e);
  }
  state.matched = true;

  if (config.assert_invariants) {
    for (PairIndex e : matched_pairs(state.allocation, market)) {
      require(state.eligible.contains(e), "matched pair " + market.pair_label(e) + " is not eligible");
    }
    require(state.rejected.is_subset_of(state.preferred), "rejected pairs outside the preferred set");
  }

  if (trace) {
    for (PairIndex e : matched_pairs(state.allocation, market)) {
      emit(trace, {.iteration = state.iteration,
                   .kind = TraceKind::Match,
                   .pair = e,
                   .firm = pairs[e].firm,
                   .new_value = state.salaries[e],
                   .r = state.firm_payoffs[pairs[e].firm]});
    }
    for (PairIndex e : state.rejected.members()) {
      emit(trace, {.iteration = state.iteration,
                   .kind = TraceKind::Reject,
                   .pair = e,
                   .firm = pairs[e].firm,
                   .new_value = state.salaries[e],
                   .r = state.firm_payoffs[pairs[e].firm]});
    }
    if (state.rejected.empty()) emit(trace, {.iteration = state.iteration, .kind = TraceKind::Terminate});
  }
}

Salary compute_salary_cut(const MarketInstance& market, PairIndex pair, Salary current_salary, double firm_payoff) {
  const auto& p = market.pair(pair);
  const IntInterval below{p.min_salary(), current_salary - 1};
  if (const auto z = greatest_arg_reaching(p.firm_valuation, firm_payoff, below)) return current_salary - *z;
  return current_salary - p.min_salary() + 1;
}

void update_salaries_and_prune(const MarketInstance& market, SolverState& state, const SolverConfig& config,
                               Trace* trace) {
  if (state.rejected.empty()) throw std::logic_error("update_salaries_and_prune: no rejected pairs");
  const auto& pairs = market.pairs();
  const Salary total_before = state.salaries.total();
  const std::size_t acceptable_before = state.acceptable.size();
  const PairSet acceptable_prev = state.acceptable;

  for (PairIndex e : state.rejected.members()) {
    const auto& pair = pairs[e];
    const double threshold = state.firm_payoffs[pair.firm];
    const Salary old_salary = state.salaries[e];
    const Salary cut = compute_salary_cut(market, e, old_salary, threshold);
    const bool infeasible = old_salary - cut < pair.min_salary();
    const Salary new_salary = std::max(pair.min_salary(), old_salary - cut);
    state.salaries[e] = new_salary;

    if (config.assert_invariants) {
      require(cut >= 1, "non-positive cut at " + market.pair_label(e));
      if (infeasible) {
        require(new_salary == pair.min_salary() && pair.firm_value(new_salary) <= threshold,
                "infeasible cut not clamped correctly at " + market.pair_label(e));
      } else {
        require(pair.firm_value(new_salary) >= threshold, "cut too small at " + market.pair_label(e));
        require(cut == 1 || pair.firm_value(new_salary + 1) < threshold, "cut not minimal at " + market.pair_label(e));
      }
    }

    emit(trace, {.iteration = state.iteration,
                 .kind = TraceKind::SalaryCut,
                 .pair = e,
                 .old_value = old_salary,
                 .new_value = new_salary,
                 .m = cut,
                 .r = threshold});
    if (infeasible) {
      state.firm_unacceptable.insert(e);
      emit(trace, {.iteration = state.iteration,
                   .kind = TraceKind::PruneL,
                   .pair = e,
                   .new_value = new_salary,
                   .r = threshold});
    }
    if (pair.worker_value(new_salary) < 0) {
      state.worker_unacceptable.insert(e);
      emit(trace, {.iteration = state.iteration,
                   .kind = TraceKind::PruneW0,
                   .pair = e,
                   .new_value = new_salary});
    }
  }

  refresh_sets(market, state);

  if (config.assert_invariants) {
    check_structure(market, state);
    require(state.acceptable.is_subset_of(acceptable_prev), "acceptable set gained a pair");
    require(state.salaries.total() < total_before || state.acceptable.size() < acceptable_before,
            "round made no progress");
  }
}

void step(const MarketInstance& market, SolverState& state, const SolverConfig& config, Trace* trace) {
  if (state.terminated()) throw SolverTerminated();
  if (!state.matched) {
    propose_and_match(market, state, config, trace);
    if (state.terminated()) return;
  }
  ++state.iteration;
  if (config.assert_invariants) {
    require(state.iteration <= iteration_bound(market), "iteration bound exceeded");
  }
  update_salaries_and_prune(market, state, config, trace);
  propose_and_match(market, state, config, trace);
}

std::size_t iteration_bound(const MarketInstance& market) {
  return market.pairs().size() + static_cast<std::size_t>(market.total_salary_span()) + 1;
}

RunResult run(const MarketInstance& market, const SolverConfig& config) {
  RunResult result;
  SolverState state = init_state(market, &result.trace);
  if (config.assert_invariants) check_structure(market, state);
  while (!state.terminated()) step(market, state, config, &result.trace);
  result.iterations = state.iteration;
  result.outcome = make_outcome(market, state.allocation, state.salaries);
  result.final_state = std::move(state);
  return result;
}

}  // namespace jobmatch
