#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "jobmatch/market.hpp"

namespace jobmatch {

/// A matched pair that is not mutually acceptable at its salary.
struct Ps1Violation {
  PairIndex pair = 0;
  Salary salary = 0;
  double worker_value = 0.0;
  double firm_value = 0.0;

  friend bool operator==(const Ps1Violation&, const Ps1Violation&) = default;
};

/// Witness that (worker, firm) would both strictly gain by contracting at
/// `salary`.
struct BlockingCertificate {
  PairIndex pair = 0;
  Salary salary = 0;
  double worker_gain = 0.0;
  double firm_gain = 0.0;
  double worker_payoff = 0.0;
  double firm_payoff = 0.0;

  friend bool operator==(const BlockingCertificate&, const BlockingCertificate&) = default;
};

/// Which pairs may block: only pairs that are not matched to each other, or
/// every admissible pair including matched ones renegotiating.
enum class Ps2Domain { Unmatched, All };

std::vector<Ps1Violation> check_ps1(const Outcome& outcome, const MarketInstance& market);

/// Scans pairs in index order and salaries in ascending order; returns the
/// first blocking certificate. Payoffs are recomputed from the allocation and
/// salaries, so the payoff fields of `outcome` are not trusted.
std::optional<BlockingCertificate> check_ps2(const Outcome& outcome, const MarketInstance& market,
                                             Ps2Domain domain = Ps2Domain::Unmatched);

struct StabilityVerdict {
  std::vector<Ps1Violation> ps1_violations;
  std::optional<BlockingCertificate> blocking;

  bool stable() const noexcept { return ps1_violations.empty() && !blocking; }
};

StabilityVerdict check_stable(const Outcome& outcome, const MarketInstance& market,
                              Ps2Domain domain = Ps2Domain::Unmatched);

struct EnumerationCaps {
  std::size_t max_workers = 3;
  std::size_t max_firms = 3;
  Salary max_total_span = 12;
};

class CapsExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An allocation together with salaries on its matched pairs, in pair order.
struct StableCandidate {
  JobAllocation allocation;
  std::vector<std::pair<PairIndex, Salary>> salaries;

  friend bool operator==(const StableCandidate&, const StableCandidate&) = default;
};

/// Every quota-respecting allocation and every feasible salary assignment on
/// its matched pairs that passes both stability conditions. Salaries of
/// unmatched pairs do not affect stability and are not enumerated.
std::vector<StableCandidate> enumerate_stable_outcomes(const MarketInstance& market,
                                                       const EnumerationCaps& caps = {},
                                                       Ps2Domain domain = Ps2Domain::Unmatched);

/// Restriction of an outcome to the form produced by the enumerator.
StableCandidate to_candidate(const Outcome& outcome, const MarketInstance& market);

/// Precondition failure of deferred_acceptance_reference.
class NotOrdinal : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Worker-proposing deferred acceptance with firm quotas, for markets where
/// every salary is fixed (min == max) and the induced preferences are strict.
JobAllocation deferred_acceptance_reference(const MarketInstance& market);

}  // namespace jobmatch
