#include "jobmatch/market.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

namespace jobmatch {

namespace {

std::string join_issues(const std::vector<ValidationIssue>& issues) {
  std::ostringstream os;
  os << "invalid instance (" << issues.size() << (issues.size() == 1 ? " issue)" : " issues)");
  for (const auto& issue : issues) os << "\n  " << issue.subject << ": " << issue.message;
  return os.str();
}

ValuationFn build_valuation(const RawValuation& raw, IntInterval domain, Direction direction) {
  return std::visit(
      [&](const auto& body) -> ValuationFn {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, std::string>) {
          return parse_valuation(body, domain, direction);
        } else if constexpr (std::is_same_v<T, std::map<Salary, double>>) {
          return ValuationFn::from_table(body, domain, direction);
        } else {
          if (body.domain() != domain) {
            throw std::invalid_argument("valuation domain does not match the salary range");
          }
          if (body.direction() != direction) {
            throw std::invalid_argument("valuation must be " + std::string(to_string(direction)));
          }
          return body;
        }
      },
      raw.body);
}

}  // namespace

ValidationError::ValidationError(std::vector<ValidationIssue> issues)
    : std::runtime_error(join_issues(issues)), issues_(std::move(issues)) {}

std::optional<WorkerIndex> MarketInstance::worker_index(std::string_view id) const {
  auto it = std::lower_bound(workers_.begin(), workers_.end(), id);
  if (it == workers_.end() || *it != id) return std::nullopt;
  return static_cast<WorkerIndex>(it - workers_.begin());
}

std::optional<FirmIndex> MarketInstance::firm_index(std::string_view id) const {
  auto it = std::lower_bound(firms_.begin(), firms_.end(), id,
                             [](const Firm& f, std::string_view key) { return f.id < key; });
  if (it == firms_.end() || it->id != id) return std::nullopt;
  return static_cast<FirmIndex>(it - firms_.begin());
}

std::optional<PairIndex> MarketInstance::find_pair(WorkerIndex w, FirmIndex f) const {
  if (w >= workers_.size() || f >= firms_.size()) return std::nullopt;
  const auto e = pair_lookup_[w * firms_.size() + f];
  if (e < 0) return std::nullopt;
  return static_cast<PairIndex>(e);
}

std::string MarketInstance::pair_label(PairIndex e) const {
  const auto& p = pairs_.at(e);
  return "(" + workers_[p.worker] + "," + firms_[p.firm].id + ")";
}

Salary MarketInstance::total_salary_span() const {
  Salary total = 0;
  for (const auto& p : pairs_) total += p.max_salary() - p.min_salary();
  return total;
}

MarketInstance validate_instance(const RawInstance& raw) {
  std::vector<ValidationIssue> issues;
  MarketInstance market;

  std::set<std::string> worker_ids;
  for (const auto& w : raw.workers) {
    if (w.empty()) issues.push_back({"worker", "empty id"});
    if (!worker_ids.insert(w).second) issues.push_back({"worker " + w, "duplicate id"});
  }
  std::set<std::string> firm_ids;
  for (const auto& f : raw.firms) {
    if (f.id.empty()) issues.push_back({"firm", "empty id"});
    if (!firm_ids.insert(f.id).second) issues.push_back({"firm " + f.id, "duplicate id"});
    if (f.quota < 1) {
      issues.push_back({"firm " + f.id, "quota must be a positive integer, got " + std::to_string(f.quota)});
    } else if (f.quota > std::numeric_limits<int>::max()) {
      issues.push_back({"firm " + f.id, "quota too large"});
    }
  }

  market.workers_.assign(worker_ids.begin(), worker_ids.end());
  for (const auto& f : raw.firms) {
    if (f.quota >= 1 && f.quota <= std::numeric_limits<int>::max()) {
      market.firms_.push_back({f.id, static_cast<int>(f.quota)});
    } else {
      market.firms_.push_back({f.id, 1});
    }
  }
  std::sort(market.firms_.begin(), market.firms_.end(), [](const Firm& a, const Firm& b) { return a.id < b.id; });
  market.firms_.erase(std::unique(market.firms_.begin(), market.firms_.end(),
                                  [](const Firm& a, const Firm& b) { return a.id == b.id; }),
                      market.firms_.end());

  std::set<std::pair<WorkerIndex, FirmIndex>> seen;
  for (const auto& rp : raw.pairs) {
    const std::string subject = "pair (" + rp.worker + "," + rp.firm + ")";
    const auto w = market.worker_index(rp.worker);
    const auto f = market.firm_index(rp.firm);
    if (!w) issues.push_back({subject, "unknown worker '" + rp.worker + "'"});
    if (!f) issues.push_back({subject, "unknown firm '" + rp.firm + "'"});
    if (w && f && !seen.insert({*w, *f}).second) {
      issues.push_back({subject, "duplicate pair"});
      continue;
    }
    if (rp.min_salary > rp.max_salary) {
      issues.push_back({subject, "min_salary " + std::to_string(rp.min_salary) + " exceeds max_salary " +
                                     std::to_string(rp.max_salary)});
      continue;
    }
    const IntInterval range{rp.min_salary, rp.max_salary};
    std::optional<ValuationFn> worker_val;
    std::optional<ValuationFn> firm_val;
    try {
      worker_val = build_valuation(rp.worker_valuation, range, Direction::Increasing);
    } catch (const std::exception& ex) {
      issues.push_back({subject, std::string("worker_valuation: ") + ex.what()});
    }
    try {
      firm_val = build_valuation(rp.firm_valuation, range, Direction::Decreasing);
    } catch (const std::exception& ex) {
      issues.push_back({subject, std::string("firm_valuation: ") + ex.what()});
    }
    if (w && f && worker_val && firm_val) {
      market.pairs_.push_back({*w, *f, range, std::move(*worker_val), std::move(*firm_val)});
    }
  }

  if (!issues.empty()) throw ValidationError(std::move(issues));

  std::sort(market.pairs_.begin(), market.pairs_.end(), [](const AdmissiblePair& a, const AdmissiblePair& b) {
    return std::tie(a.worker, a.firm) < std::tie(b.worker, b.firm);
  });
  market.by_worker_.assign(market.workers_.size(), {});
  market.by_firm_.assign(market.firms_.size(), {});
  market.pair_lookup_.assign(market.workers_.size() * market.firms_.size(), -1);
  for (PairIndex e = 0; e < market.pairs_.size(); ++e) {
    const auto& p = market.pairs_[e];
    market.by_worker_[p.worker].push_back(e);
    market.by_firm_[p.firm].push_back(e);
    market.pair_lookup_[p.worker * market.firms_.size() + p.firm] = static_cast<std::ptrdiff_t>(e);
  }
  return market;
}

bool SalaryVector::is_feasible(const MarketInstance& market) const {
  if (values_.size() != market.pairs().size()) return false;
  for (PairIndex e = 0; e < values_.size(); ++e) {
    if (!market.pair(e).salary_range.contains(values_[e])) return false;
  }
  return true;
}

Salary SalaryVector::total() const {
  Salary sum = 0;
  for (Salary v : values_) sum += v;
  return sum;
}

JobAllocation::JobAllocation(std::size_t worker_count, std::size_t firm_count)
    : firm_of_(worker_count, kUnmatched), occupancy_(firm_count, 0) {}

void JobAllocation::assign(WorkerIndex w, FirmIndex f) {
  if (f >= occupancy_.size()) throw std::out_of_range("firm index out of range");
  if (firm_of_.at(w) != kUnmatched) throw std::logic_error("worker already assigned");
  firm_of_[w] = static_cast<std::ptrdiff_t>(f);
  ++occupancy_[f];
  ++matched_;
}

void JobAllocation::unassign(WorkerIndex w) {
  const auto f = firm_of_.at(w);
  if (f == kUnmatched) return;
  --occupancy_[static_cast<std::size_t>(f)];
  --matched_;
  firm_of_[w] = kUnmatched;
}

std::optional<FirmIndex> JobAllocation::firm_of(WorkerIndex w) const {
  const auto f = firm_of_.at(w);
  if (f == kUnmatched) return std::nullopt;
  return static_cast<FirmIndex>(f);
}

std::vector<WorkerIndex> JobAllocation::hired_by(FirmIndex f) const {
  std::vector<WorkerIndex> out;
  for (WorkerIndex w = 0; w < firm_of_.size(); ++w) {
    if (firm_of_[w] == static_cast<std::ptrdiff_t>(f)) out.push_back(w);
  }
  return out;
}

std::vector<PairIndex> matched_pairs(const JobAllocation& allocation, const MarketInstance& market) {
  std::vector<PairIndex> out;
  for (WorkerIndex w = 0; w < allocation.worker_count(); ++w) {
    const auto f = allocation.firm_of(w);
    if (!f) continue;
    const auto e = market.find_pair(w, *f);
    if (!e) throw std::invalid_argument("allocation matches a non-admissible pair");
    out.push_back(*e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ValidationIssue> check_allocation(const JobAllocation& allocation, const MarketInstance& market) {
  std::vector<ValidationIssue> issues;
  if (allocation.worker_count() != market.workers().size() || allocation.firm_count() != market.firms().size()) {
    issues.push_back({"allocation", "dimensions do not match the instance"});
    return issues;
  }
  for (WorkerIndex w = 0; w < allocation.worker_count(); ++w) {
    const auto f = allocation.firm_of(w);
    if (f && !market.find_pair(w, *f)) {
      issues.push_back({"pair (" + market.workers()[w] + "," + market.firms()[*f].id + ")", "not admissible"});
    }
  }
  for (FirmIndex f = 0; f < market.firms().size(); ++f) {
    const auto& firm = market.firms()[f];
    if (allocation.occupancy(f) > static_cast<std::size_t>(firm.quota)) {
      issues.push_back({"firm " + firm.id, "hires " + std::to_string(allocation.occupancy(f)) +
                                               " workers, quota is " + std::to_string(firm.quota)});
    }
  }
  return issues;
}

std::vector<double> payoff_q(const JobAllocation& allocation, const SalaryVector& salaries,
                             const MarketInstance& market) {
  std::vector<double> q(market.workers().size(), 0.0);
  for (PairIndex e : matched_pairs(allocation, market)) {
    const auto& p = market.pair(e);
    q[p.worker] = p.worker_value(salaries[e]);
  }
  return q;
}

std::vector<double> payoff_r(const JobAllocation& allocation, const SalaryVector& salaries,
                             const MarketInstance& market) {
  std::vector<double> r(market.firms().size(), 0.0);
  std::vector<std::optional<double>> least(market.firms().size());
  for (PairIndex e : matched_pairs(allocation, market)) {
    const auto& p = market.pair(e);
    const double v = p.firm_value(salaries[e]);
    if (!least[p.firm] || v < *least[p.firm]) least[p.firm] = v;
  }
  for (FirmIndex f = 0; f < r.size(); ++f) {
    const bool full = allocation.occupancy(f) == static_cast<std::size_t>(market.firms()[f].quota);
    if (full && least[f]) r[f] = *least[f];
  }
  return r;
}

Outcome make_outcome(const MarketInstance& market, JobAllocation allocation, SalaryVector salaries) {
  Outcome out{std::move(allocation), std::move(salaries), {}, {}};
  out.worker_payoffs = payoff_q(out.allocation, out.salaries, market);
  out.firm_payoffs = payoff_r(out.allocation, out.salaries, market);
  return out;
}

}  // namespace jobmatch
