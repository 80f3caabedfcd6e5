#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "jobmatch/expression.hpp"

namespace jobmatch {

using Salary = std::int64_t;

/// Closed integer interval [lo, hi].
struct IntInterval {
  Salary lo = 0;
  Salary hi = 0;

  bool empty() const noexcept { return hi < lo; }
  bool contains(Salary z) const noexcept { return lo <= z && z <= hi; }
  std::uint64_t size() const noexcept { return empty() ? 0 : static_cast<std::uint64_t>(hi - lo) + 1; }
  friend bool operator==(const IntInterval&, const IntInterval&) = default;
};

enum class Direction { Increasing, Decreasing };

std::string_view to_string(Direction d);

/// The function is not strictly monotone in the declared direction; the
/// failure is between `z()` and `z() + 1`.
class MonotonicityError : public std::runtime_error {
 public:
  MonotonicityError(Salary z, Direction direction);
  Salary z() const noexcept { return z_; }

 private:
  Salary z_;
};

/// Evaluation outside the domain, or a non-finite value inside it.
class DomainError : public std::runtime_error {
 public:
  DomainError(Salary z, const std::string& what);
  Salary z() const noexcept { return z_; }

 private:
  Salary z_;
};

/// Largest domain a valuation may span; every point is materialized.
inline constexpr std::uint64_t kMaxDomainSize = 1U << 22;

/// A strictly monotone map from an integer interval to the reals.
///
/// Values are computed once at construction (which is also where the
/// monotonicity scan happens) so evaluation is a table lookup. Instances are
/// immutable and cheap to copy.
class ValuationFn {
 public:
  static ValuationFn from_expression(Expression expr, IntInterval domain, Direction direction);
  static ValuationFn from_table(const std::map<Salary, double>& table, IntInterval domain,
                                Direction direction);

  double eval(Salary z) const;
  double operator()(Salary z) const { return eval(z); }

  IntInterval domain() const noexcept;
  Direction direction() const noexcept;

  bool is_table() const noexcept;
  /// Expression body; empty for table-backed functions.
  const std::optional<Expression>& expression() const noexcept;
  /// All values on the domain, index 0 holding the value at domain().lo.
  std::span<const double> values() const noexcept;

  /// Expression text, or a `{z: v, ...}` listing for tables.
  std::string to_string() const;

 private:
  struct Impl;
  explicit ValuationFn(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

ValuationFn parse_valuation(std::string_view text, IntInterval domain, Direction direction);

/// Smallest z in `within` (default: whole domain) with f(z) >= target, for
/// increasing f.
std::optional<Salary> least_arg_reaching(const ValuationFn& f, double target);
std::optional<Salary> least_arg_reaching(const ValuationFn& f, double target, IntInterval within);

/// Largest z in `within` (default: whole domain) with g(z) >= target, for
/// decreasing g.
std::optional<Salary> greatest_arg_reaching(const ValuationFn& g, double target);
std::optional<Salary> greatest_arg_reaching(const ValuationFn& g, double target, IntInterval within);

}  // namespace jobmatch
