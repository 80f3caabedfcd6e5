#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "jobmatch/market.hpp"

namespace jobmatch {

/// Parameters for random instance generation. Limits are checked by
/// generate_instance.
struct GeneratorParams {
  std::uint64_t seed = 1;
  std::size_t workers = 4;   // 1..1000
  std::size_t firms = 2;     // 1..1000
  int max_quota = 3;         // 1..1000
  Salary max_span = 12;      // 0..100000, per pair
  int density_percent = 100; // chance that a given worker/firm pair is admissible
  /// Every pair gets min == max and strict constant valuations, which turns
  /// the market into a purely ordinal college-admissions instance.
  bool fixed_salaries = false;
};

/// Deterministic for a given parameter set on every platform: draws come from
/// std::mt19937_64 (whose output sequence is fixed by the standard) through
/// integer-only reductions.
class DeterministicRng {
 public:
  explicit DeterministicRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  bool chance(int percent) { return uniform(0, 99) < percent; }

 private:
  std::mt19937_64 engine_;
};

/// Valuation families: linear, shifted quadratics restricted to a monotone
/// branch, and random monotone tables. Values are integers or halves so
/// evaluation and comparison are exact.
RawInstance generate_instance(const GeneratorParams& params);

}  // namespace jobmatch
