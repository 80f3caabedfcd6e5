#include "jobmatch/valuation.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace jobmatch {

std::string_view to_string(Direction d) {
  return d == Direction::Increasing ? "increasing" : "decreasing";
}

MonotonicityError::MonotonicityError(Salary z, Direction direction)
    : std::runtime_error("monotonicity violation at z=" + std::to_string(z) + ": value at z+1 is not strictly " +
                         (direction == Direction::Increasing ? "greater" : "smaller")),
      z_(z) {}

DomainError::DomainError(Salary z, const std::string& what)
    : std::runtime_error(what + " at z=" + std::to_string(z)), z_(z) {}

struct ValuationFn::Impl {
  IntInterval domain;
  Direction direction;
  std::vector<double> values;
  std::optional<Expression> expr;
};

namespace {

void check_domain(IntInterval domain) {
  if (domain.empty()) {
    throw std::invalid_argument("empty domain [" + std::to_string(domain.lo) + ", " + std::to_string(domain.hi) + "]");
  }
  if (domain.size() > kMaxDomainSize) {
    throw std::invalid_argument("domain of " + std::to_string(domain.size()) + " points exceeds the limit of " +
                                std::to_string(kMaxDomainSize));
  }
}

void check_monotone(const std::vector<double>& values, IntInterval domain, Direction direction) {
  for (std::size_t k = 0; k + 1 < values.size(); ++k) {
    const bool ok = direction == Direction::Increasing ? values[k + 1] > values[k] : values[k + 1] < values[k];
    if (!ok) throw MonotonicityError(domain.lo + static_cast<Salary>(k), direction);
  }
}

std::string format_value(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void require_direction(const ValuationFn& f, Direction d, const char* who) {
  if (f.direction() != d) {
    throw std::invalid_argument(std::string(who) + " requires a " + std::string(to_string(d)) + " function");
  }
}

IntInterval clip(IntInterval a, IntInterval b) { return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)}; }

}  // namespace

ValuationFn ValuationFn::from_expression(Expression expr, IntInterval domain, Direction direction) {
  check_domain(domain);
  auto impl = std::make_shared<Impl>();
  impl->domain = domain;
  impl->direction = direction;
  impl->values.reserve(domain.size());
  for (Salary z = domain.lo;; ++z) {
    const double v = expr.evaluate(static_cast<double>(z));
    if (!std::isfinite(v)) throw DomainError(z, "non-finite value");
    impl->values.push_back(v);
    if (z == domain.hi) break;
  }
  check_monotone(impl->values, domain, direction);
  impl->expr = std::move(expr);
  return ValuationFn(std::move(impl));
}

ValuationFn ValuationFn::from_table(const std::map<Salary, double>& table, IntInterval domain, Direction direction) {
  check_domain(domain);
  auto impl = std::make_shared<Impl>();
  impl->domain = domain;
  impl->direction = direction;
  impl->values.reserve(domain.size());
  for (Salary z = domain.lo;; ++z) {
    auto it = table.find(z);
    if (it == table.end()) throw DomainError(z, "table has no entry");
    if (!std::isfinite(it->second)) throw DomainError(z, "non-finite value");
    impl->values.push_back(it->second);
    if (z == domain.hi) break;
  }
  for (const auto& [z, v] : table) {
    if (!domain.contains(z)) throw DomainError(z, "table entry outside the domain");
  }
  check_monotone(impl->values, domain, direction);
  return ValuationFn(std::move(impl));
}

double ValuationFn::eval(Salary z) const {
  if (!impl_->domain.contains(z)) {
    throw DomainError(z, "argument outside domain [" + std::to_string(impl_->domain.lo) + ", " +
                             std::to_string(impl_->domain.hi) + "]");
  }
  return impl_->values[static_cast<std::size_t>(z - impl_->domain.lo)];
}

IntInterval ValuationFn::domain() const noexcept { return impl_->domain; }
Direction ValuationFn::direction() const noexcept { return impl_->direction; }
bool ValuationFn::is_table() const noexcept { return !impl_->expr.has_value(); }
const std::optional<Expression>& ValuationFn::expression() const noexcept { return impl_->expr; }
std::span<const double> ValuationFn::values() const noexcept { return impl_->values; }

std::string ValuationFn::to_string() const {
  if (impl_->expr) return impl_->expr->to_string();
  std::ostringstream os;
  os << '{';
  for (std::size_t k = 0; k < impl_->values.size(); ++k) {
    if (k) os << ", ";
    os << impl_->domain.lo + static_cast<Salary>(k) << ": " << format_value(impl_->values[k]);
  }
  os << '}';
  return os.str();
}

ValuationFn parse_valuation(std::string_view text, IntInterval domain, Direction direction) {
  return ValuationFn::from_expression(Expression::parse(text), domain, direction);
}

std::optional<Salary> least_arg_reaching(const ValuationFn& f, double target) {
  return least_arg_reaching(f, target, f.domain());
}

std::optional<Salary> least_arg_reaching(const ValuationFn& f, double target, IntInterval within) {
  require_direction(f, Direction::Increasing, "least_arg_reaching");
  const IntInterval range = clip(within, f.domain());
  if (range.empty() || f.eval(range.hi) < target) return std::nullopt;
  // invariant: f(hi) >= target; answer in [lo, hi]
  Salary lo = range.lo;
  Salary hi = range.hi;
  while (lo < hi) {
    const Salary mid = lo + (hi - lo) / 2;
    if (f.eval(mid) >= target) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

std::optional<Salary> greatest_arg_reaching(const ValuationFn& g, double target) {
  return greatest_arg_reaching(g, target, g.domain());
}

std::optional<Salary> greatest_arg_reaching(const ValuationFn& g, double target, IntInterval within) {
  require_direction(g, Direction::Decreasing, "greatest_arg_reaching");
  const IntInterval range = clip(within, g.domain());
  if (range.empty() || g.eval(range.lo) < target) return std::nullopt;
  Salary lo = range.lo;
  Salary hi = range.hi;
  while (lo < hi) {
    const Salary mid = lo + (hi - lo + 1) / 2;
    if (g.eval(mid) >= target) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

}  // namespace jobmatch
