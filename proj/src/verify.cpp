#include "jobmatch/verify.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace jobmatch {

std::vector<Ps1Violation> check_ps1(const Outcome& outcome, const MarketInstance& market) {
  std::vector<Ps1Violation> out;
  for (PairIndex e : matched_pairs(outcome.allocation, market)) {
    const auto& pair = market.pair(e);
    const Salary p = outcome.salaries[e];
    const double fw = pair.worker_value(p);
    const double ff = pair.firm_value(p);
    if (fw < 0 || ff < 0) out.push_back({e, p, fw, ff});
  }
  return out;
}

std::optional<BlockingCertificate> check_ps2(const Outcome& outcome, const MarketInstance& market, Ps2Domain domain) {
  const auto q = payoff_q(outcome.allocation, outcome.salaries, market);
  const auto r = payoff_r(outcome.allocation, outcome.salaries, market);
  const auto& pairs = market.pairs();
  for (PairIndex e = 0; e < pairs.size(); ++e) {
    const auto& pair = pairs[e];
    if (domain == Ps2Domain::Unmatched && outcome.allocation.matched(pair.worker, pair.firm)) continue;
    for (Salary theta = pair.min_salary(); theta <= pair.max_salary(); ++theta) {
      const double fw = pair.worker_value(theta);
      const double ff = pair.firm_value(theta);
      if (fw > q[pair.worker] && ff > r[pair.firm]) {
        return BlockingCertificate{e, theta, fw, ff, q[pair.worker], r[pair.firm]};
      }
    }
  }
  return std::nullopt;
}

StabilityVerdict check_stable(const Outcome& outcome, const MarketInstance& market, Ps2Domain domain) {
  return {check_ps1(outcome, market), check_ps2(outcome, market, domain)};
}

StableCandidate to_candidate(const Outcome& outcome, const MarketInstance& market) {
  StableCandidate c{outcome.allocation, {}};
  for (PairIndex e : matched_pairs(outcome.allocation, market)) c.salaries.emplace_back(e, outcome.salaries[e]);
  return c;
}

std::vector<StableCandidate> enumerate_stable_outcomes(const MarketInstance& market, const EnumerationCaps& caps,
                                                       Ps2Domain domain) {
  if (market.workers().size() > caps.max_workers || market.firms().size() > caps.max_firms ||
      market.total_salary_span() > caps.max_total_span) {
    throw CapsExceeded("instance exceeds enumeration caps (" + std::to_string(caps.max_workers) + " workers, " +
                       std::to_string(caps.max_firms) + " firms, total span " +
                       std::to_string(caps.max_total_span) + ")");
  }
  const auto& workers = market.workers();
  const auto& pairs = market.pairs();
  std::vector<StableCandidate> stable;

  std::vector<Salary> base(pairs.size());
  for (PairIndex e = 0; e < pairs.size(); ++e) base[e] = pairs[e].min_salary();

  auto try_salaries = [&](const JobAllocation& allocation) {
    const auto matched = matched_pairs(allocation, market);
    std::vector<Salary> salaries = base;
    auto assign = [&](auto&& self, std::size_t k) -> void {
      if (k == matched.size()) {
        const Outcome outcome = make_outcome(market, allocation, SalaryVector(salaries));
        if (check_stable(outcome, market, domain).stable()) stable.push_back(to_candidate(outcome, market));
        return;
      }
      const auto& pair = pairs[matched[k]];
      for (Salary z = pair.min_salary(); z <= pair.max_salary(); ++z) {
        // skip salaries that already break mutual acceptability
        if (pair.worker_value(z) < 0 || pair.firm_value(z) < 0) continue;
        salaries[matched[k]] = z;
        self(self, k + 1);
      }
    };
    assign(assign, 0);
  };

  JobAllocation allocation(workers.size(), market.firms().size());
  auto choose = [&](auto&& self, WorkerIndex w) -> void {
    if (w == workers.size()) {
      try_salaries(allocation);
      return;
    }
    self(self, w + 1);
    for (PairIndex e : market.pairs_of_worker(w)) {
      const FirmIndex f = pairs[e].firm;
      if (allocation.occupancy(f) >= static_cast<std::size_t>(market.firms()[f].quota)) continue;
      allocation.assign(w, f);
      self(self, w + 1);
      allocation.unassign(w);
    }
  };
  choose(choose, 0);
  return stable;
}

JobAllocation deferred_acceptance_reference(const MarketInstance& market) {
  const auto& pairs = market.pairs();
  for (PairIndex e = 0; e < pairs.size(); ++e) {
    if (pairs[e].min_salary() != pairs[e].max_salary()) {
      throw NotOrdinal("salary of " + market.pair_label(e) + " is not fixed");
    }
  }
  auto salary = [&](PairIndex e) { return pairs[e].min_salary(); };

  // proposal lists: acceptable firms, best first
  std::vector<std::vector<PairIndex>> lists(market.workers().size());
  for (WorkerIndex w = 0; w < lists.size(); ++w) {
    std::set<double> values;
    for (PairIndex e : market.pairs_of_worker(w)) {
      const double v = pairs[e].worker_value(salary(e));
      if (v < 0) continue;
      if (!values.insert(v).second) throw NotOrdinal("worker " + market.workers()[w] + " has tied firms");
      lists[w].push_back(e);
    }
    std::sort(lists[w].begin(), lists[w].end(), [&](PairIndex a, PairIndex b) {
      return pairs[a].worker_value(salary(a)) > pairs[b].worker_value(salary(b));
    });
  }
  for (FirmIndex f = 0; f < market.firms().size(); ++f) {
    std::set<double> values;
    for (PairIndex e : market.pairs_of_firm(f)) {
      const double v = pairs[e].firm_value(salary(e));
      if (v >= 0 && !values.insert(v).second) {
        throw NotOrdinal("firm " + market.firms()[f].id + " has tied workers");
      }
    }
  }

  std::vector<std::size_t> next(lists.size(), 0);
  std::vector<std::vector<PairIndex>> held(market.firms().size());
  std::deque<WorkerIndex> free;
  for (WorkerIndex w = 0; w < lists.size(); ++w) free.push_back(w);

  while (!free.empty()) {
    const WorkerIndex w = free.front();
    free.pop_front();
    if (next[w] >= lists[w].size()) continue;
    const PairIndex e = lists[w][next[w]++];
    const FirmIndex f = pairs[e].firm;
    const double value = pairs[e].firm_value(salary(e));
    if (value < 0) {
      free.push_back(w);
      continue;
    }
    auto& hold = held[f];
    if (hold.size() < static_cast<std::size_t>(market.firms()[f].quota)) {
      hold.push_back(e);
      continue;
    }
    auto worst = std::min_element(hold.begin(), hold.end(), [&](PairIndex a, PairIndex b) {
      return pairs[a].firm_value(salary(a)) < pairs[b].firm_value(salary(b));
    });
    if (pairs[*worst].firm_value(salary(*worst)) < value) {
      free.push_back(pairs[*worst].worker);
      *worst = e;
    } else {
      free.push_back(w);
    }
  }

  JobAllocation out(market.workers().size(), market.firms().size());
  for (const auto& hold : held) {
    for (PairIndex e : hold) out.assign(pairs[e].worker, pairs[e].firm);
  }
  return out;
}

}  // namespace jobmatch
