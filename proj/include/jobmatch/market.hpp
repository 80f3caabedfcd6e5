#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "jobmatch/valuation.hpp"

namespace jobmatch {

using WorkerIndex = std::size_t;
using FirmIndex = std::size_t;
using PairIndex = std::size_t;

struct Firm {
  std::string id;
  int quota = 1;
};

/// An admissible worker/firm pair. The firm valuation is stored as a function
/// of the salary paid, so it is strictly decreasing.
struct AdmissiblePair {
  WorkerIndex worker = 0;
  FirmIndex firm = 0;
  IntInterval salary_range;
  ValuationFn worker_valuation;
  ValuationFn firm_valuation;

  Salary min_salary() const noexcept { return salary_range.lo; }
  Salary max_salary() const noexcept { return salary_range.hi; }
  double worker_value(Salary z) const { return worker_valuation.eval(z); }
  double firm_value(Salary z) const { return firm_valuation.eval(z); }
};

// Unvalidated input, as read from a document or assembled in code.

struct RawValuation {
  std::variant<std::string, std::map<Salary, double>, ValuationFn> body;
};

struct RawFirm {
  std::string id;
  std::int64_t quota = 1;
};

struct RawPair {
  std::string worker;
  std::string firm;
  Salary min_salary = 0;
  Salary max_salary = 0;
  RawValuation worker_valuation;
  RawValuation firm_valuation;
};

struct RawInstance {
  std::vector<std::string> workers;
  std::vector<RawFirm> firms;
  std::vector<RawPair> pairs;
};

struct ValidationIssue {
  std::string subject;
  std::string message;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<ValidationIssue> issues);
  const std::vector<ValidationIssue>& issues() const noexcept { return issues_; }

 private:
  std::vector<ValidationIssue> issues_;
};

/// Validated market. Workers, firms and pairs are held in lexicographic id
/// order; pairs are sorted by (worker id, firm id), so index order is the
/// deterministic iteration order used everywhere.
class MarketInstance {
 public:
  const std::vector<std::string>& workers() const noexcept { return workers_; }
  const std::vector<Firm>& firms() const noexcept { return firms_; }
  const std::vector<AdmissiblePair>& pairs() const noexcept { return pairs_; }
  const AdmissiblePair& pair(PairIndex e) const { return pairs_.at(e); }

  std::optional<WorkerIndex> worker_index(std::string_view id) const;
  std::optional<FirmIndex> firm_index(std::string_view id) const;
  std::optional<PairIndex> find_pair(WorkerIndex w, FirmIndex f) const;

  std::span<const PairIndex> pairs_of_worker(WorkerIndex w) const { return by_worker_.at(w); }
  std::span<const PairIndex> pairs_of_firm(FirmIndex f) const { return by_firm_.at(f); }

  /// "(worker,firm)" for diagnostics.
  std::string pair_label(PairIndex e) const;

  /// Sum of (b - a) over all pairs.
  Salary total_salary_span() const;

 private:
  friend MarketInstance validate_instance(const RawInstance& raw);

  std::vector<std::string> workers_;
  std::vector<Firm> firms_;
  std::vector<AdmissiblePair> pairs_;
  std::vector<std::vector<PairIndex>> by_worker_;
  std::vector<std::vector<PairIndex>> by_firm_;
  std::vector<std::ptrdiff_t> pair_lookup_;  // |W| x |F|, -1 when absent
};

/// Validates raw data; throws ValidationError listing every violation.
MarketInstance validate_instance(const RawInstance& raw);

/// Salary p_ij for every admissible pair, indexed by PairIndex.
class SalaryVector {
 public:
  SalaryVector() = default;
  explicit SalaryVector(std::vector<Salary> values) : values_(std::move(values)) {}

  Salary operator[](PairIndex e) const { return values_.at(e); }
  Salary& operator[](PairIndex e) { return values_.at(e); }
  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<Salary>& values() const noexcept { return values_; }

  bool is_feasible(const MarketInstance& market) const;
  Salary total() const;

  friend bool operator==(const SalaryVector&, const SalaryVector&) = default;

 private:
  std::vector<Salary> values_;
};

/// Firm assignment of each worker. A worker holds at most one firm by
/// construction; quotas are checked against an instance separately.
class JobAllocation {
 public:
  JobAllocation() = default;
  JobAllocation(std::size_t worker_count, std::size_t firm_count);

  void assign(WorkerIndex w, FirmIndex f);
  void unassign(WorkerIndex w);

  std::optional<FirmIndex> firm_of(WorkerIndex w) const;
  bool matched(WorkerIndex w, FirmIndex f) const { return firm_of(w) == f; }
  std::vector<WorkerIndex> hired_by(FirmIndex f) const;
  std::size_t occupancy(FirmIndex f) const { return occupancy_.at(f); }
  /// Number of matched workers.
  std::size_t size() const noexcept { return matched_; }
  bool empty() const noexcept { return matched_ == 0; }

  std::size_t worker_count() const noexcept { return firm_of_.size(); }
  std::size_t firm_count() const noexcept { return occupancy_.size(); }

  friend bool operator==(const JobAllocation&, const JobAllocation&) = default;

 private:
  static constexpr std::ptrdiff_t kUnmatched = -1;
  std::vector<std::ptrdiff_t> firm_of_;
  std::vector<std::size_t> occupancy_;
  std::size_t matched_ = 0;
};

/// Matched pairs of `allocation` as pair indices, in index order. Throws
/// std::invalid_argument if some matched pair is not admissible.
std::vector<PairIndex> matched_pairs(const JobAllocation& allocation, const MarketInstance& market);

/// Quota and admissibility problems of an allocation; empty when valid.
std::vector<ValidationIssue> check_allocation(const JobAllocation& allocation, const MarketInstance& market);

std::vector<double> payoff_q(const JobAllocation& allocation, const SalaryVector& salaries,
                             const MarketInstance& market);
std::vector<double> payoff_r(const JobAllocation& allocation, const SalaryVector& salaries,
                             const MarketInstance& market);

struct Outcome {
  JobAllocation allocation;
  SalaryVector salaries;
  std::vector<double> worker_payoffs;
  std::vector<double> firm_payoffs;

  friend bool operator==(const Outcome&, const Outcome&) = default;
};

/// Builds an outcome whose payoffs are derived from the allocation and salaries.
Outcome make_outcome(const MarketInstance& market, JobAllocation allocation, SalaryVector salaries);

}  // namespace jobmatch
