#include "jobmatch/generator.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

namespace jobmatch {

std::int64_t DeterministicRng::uniform(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw std::invalid_argument("uniform: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(engine_());  // full 64-bit range
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return lo + static_cast<std::int64_t>(x % span);
}

namespace {

std::string padded_id(char prefix, std::size_t k, std::size_t count) {
  const std::size_t width = std::to_string(count).size();
  std::string digits = std::to_string(k);
  return std::string(1, prefix) + std::string(width - digits.size(), '0') + digits;
}

// "z - 3", "z + 2" or "z"
std::string shifted(Salary z0) {
  if (z0 == 0) return "z";
  return z0 > 0 ? "z - " + std::to_string(z0) : "z + " + std::to_string(-z0);
}

// "2 - z", "-3 - z" style, written so the grammar accepts negative offsets
std::string reflected(Salary z0) {
  if (z0 == 0) return "-z";
  return z0 > 0 ? std::to_string(z0) + " - z" : "-" + std::to_string(-z0) + " - z";
}

std::string scaled(const std::string& body, std::int64_t num, std::int64_t den) {
  std::string s = num == 1 ? "(" + body + ")" : std::to_string(num) + "*(" + body + ")";
  if (den != 1) s += "/" + std::to_string(den);
  return s;
}

RawValuation worker_valuation(DeterministicRng& rng, IntInterval range) {
  switch (rng.uniform(0, 2)) {
    case 0: {
      const Salary z0 = rng.uniform(range.lo - 2, range.hi + 1);
      return {scaled(shifted(z0), rng.uniform(1, 3), rng.uniform(1, 2))};
    }
    case 1: {
      const Salary z0 = rng.uniform(range.lo - 3, range.lo);
      const std::int64_t c = rng.uniform(1, 2);
      const Salary top = (range.hi - z0) * (range.hi - z0) * c;
      const std::int64_t d = rng.uniform(0, top);
      std::string s = (c == 1 ? "" : std::to_string(c) + "*") + "(" + shifted(z0) + ")^2";
      if (d > 0) s += " - " + std::to_string(d);
      return {s};
    }
    default: {
      std::map<Salary, double> table;
      double v = static_cast<double>(rng.uniform(-12, 4)) / 2.0;
      for (Salary z = range.lo; z <= range.hi; ++z) {
        table[z] = v;
        v += static_cast<double>(rng.uniform(1, 6)) / 2.0;
      }
      return {table};
    }
  }
}

RawValuation firm_valuation(DeterministicRng& rng, IntInterval range) {
  switch (rng.uniform(0, 2)) {
    case 0: {
      const Salary z0 = rng.uniform(range.lo - 1, range.hi + 2);
      return {scaled(reflected(z0), rng.uniform(1, 3), rng.uniform(1, 2))};
    }
    case 1: {
      const Salary z0 = rng.uniform(range.lo - 3, range.lo);
      const std::int64_t c = rng.uniform(1, 2);
      const Salary top = (range.hi - z0) * (range.hi - z0) * c + 2;
      const std::int64_t d = rng.uniform(0, top);
      return {std::to_string(d) + " - " + (c == 1 ? "" : std::to_string(c) + "*") + "(" + shifted(z0) + ")^2"};
    }
    default: {
      std::map<Salary, double> table;
      double v = static_cast<double>(rng.uniform(-2, 16)) / 2.0;
      for (Salary z = range.lo; z <= range.hi; ++z) {
        table[z] = v;
        v -= static_cast<double>(rng.uniform(1, 6)) / 2.0;
      }
      return {table};
    }
  }
}

void check_params(const GeneratorParams& p) {
  if (p.workers < 1 || p.workers > 1000) throw std::invalid_argument("workers must be in 1..1000");
  if (p.firms < 1 || p.firms > 1000) throw std::invalid_argument("firms must be in 1..1000");
  if (p.max_quota < 1 || p.max_quota > 1000) throw std::invalid_argument("max quota must be in 1..1000");
  if (p.max_span < 0 || p.max_span > 100000) throw std::invalid_argument("max span must be in 0..100000");
  if (p.density_percent < 0 || p.density_percent > 100) throw std::invalid_argument("density must be in 0..100");
}

std::string constant(std::int64_t v) { return std::to_string(v); }

}  // namespace

RawInstance generate_instance(const GeneratorParams& params) {
  check_params(params);
  DeterministicRng rng(params.seed);
  RawInstance raw;
  for (std::size_t i = 1; i <= params.workers; ++i) raw.workers.push_back(padded_id('w', i, params.workers));
  for (std::size_t j = 1; j <= params.firms; ++j) {
    raw.firms.push_back({padded_id('F', j, params.firms), rng.uniform(1, params.max_quota)});
  }

  for (const auto& worker : raw.workers) {
    for (const auto& firm : raw.firms) {
      if (!rng.chance(params.density_percent)) continue;
      RawPair pair;
      pair.worker = worker;
      pair.firm = firm.id;
      pair.min_salary = rng.uniform(0, 5);
      pair.max_salary = params.fixed_salaries ? pair.min_salary : pair.min_salary + rng.uniform(0, params.max_span);
      if (!params.fixed_salaries) {
        const IntInterval range{pair.min_salary, pair.max_salary};
        pair.worker_valuation = worker_valuation(rng, range);
        pair.firm_valuation = firm_valuation(rng, range);
      }
      raw.pairs.push_back(std::move(pair));
    }
  }

  if (params.fixed_salaries) {
    // strict ordinal preferences: distinct constants per worker and per firm,
    // a few of them negative (unacceptable)
    auto assign = [&](auto pick_side, auto key_of) {
      std::map<std::string, std::vector<RawPair*>> groups;
      for (auto& pair : raw.pairs) groups[key_of(pair)].push_back(&pair);
      for (auto& [key, members] : groups) {
        std::vector<std::int64_t> values(members.size());
        const auto offset = rng.uniform(0, static_cast<std::int64_t>(members.size()) / 3);
        for (std::size_t k = 0; k < values.size(); ++k) values[k] = static_cast<std::int64_t>(k) - offset;
        for (std::size_t k = values.size(); k > 1; --k) {
          std::swap(values[k - 1], values[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(k) - 1))]);
        }
        for (std::size_t k = 0; k < members.size(); ++k) pick_side(*members[k]) = {constant(values[k])};
      }
    };
    assign([](RawPair& p) -> RawValuation& { return p.worker_valuation; },
           [](const RawPair& p) { return p.worker; });
    assign([](RawPair& p) -> RawValuation& { return p.firm_valuation; }, [](const RawPair& p) { return p.firm; });
  }
  return raw;
}

}  // namespace jobmatch
