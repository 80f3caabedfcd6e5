#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "jobmatch/market.hpp"
#include "jobmatch/solver.hpp"
#include "jobmatch/verify.hpp"

namespace jobmatch {

using ordered_json = nlohmann::ordered_json;

/// Malformed document, unreadable file, or ids that do not belong to the
/// instance.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Instance documents:
//   {"workers": ["w1", ...],
//    "firms": [{"id": "A", "quota": 2}, ...],
//    "pairs": [{"worker": "w1", "firm": "A", "min_salary": 0, "max_salary": 5,
//               "worker_valuation": "z - 2",
//               "firm_valuation": {"table": {"0": 4, "1": 3, ...}}}, ...]}
// A valuation is an expression string or a table covering every salary in
// [min_salary, max_salary]. Only listed pairs are admissible.

RawInstance raw_instance_from_json(const nlohmann::json& doc);
ordered_json raw_instance_to_json(const RawInstance& raw);
ordered_json instance_to_json(const MarketInstance& market);

/// Parses and validates; throws FormatError or ValidationError.
MarketInstance parse_instance(std::string_view text);
MarketInstance load_instance(const std::filesystem::path& path);

// Outcome documents:
//   {"matches": [{"firm": "A", "workers": [{"worker": "w1", "salary": 4}]}],
//    "worker_payoffs": {"w1": 2.0, ...}, "firm_payoffs": {"A": 0.0, ...},
//    "unmatched_workers": [...], "iterations": 3, "stable": true,
//    "salaries": [{"worker": "w1", "firm": "A", "salary": 4}, ...]}
// "salaries" carries the full salary vector; when it is absent, unmatched
// pairs read back at their minimum salary.

struct OutcomeDocument {
  Outcome outcome;  // payoffs recomputed from allocation and salaries
  std::size_t iterations = 0;
  bool stable = false;
  std::vector<double> recorded_worker_payoffs;
  std::vector<double> recorded_firm_payoffs;
};

ordered_json outcome_to_json(const MarketInstance& market, const Outcome& outcome, std::size_t iterations,
                             bool stable);
OutcomeDocument outcome_from_json(const nlohmann::json& doc, const MarketInstance& market);
OutcomeDocument load_outcome(const std::filesystem::path& path, const MarketInstance& market);

// Trace records: one object per line,
//   {"iter": 2, "kind": "salary_cut", "pair": ["w1", "A"], "old": 3, "new": 2, "m": 1, "r": 1.0}

ordered_json trace_event_to_json(const MarketInstance& market, const TraceEvent& event);
TraceEvent trace_event_from_json(const nlohmann::json& doc, const MarketInstance& market);
std::string trace_to_jsonl(const MarketInstance& market, const Trace& trace);
Trace trace_from_jsonl(std::string_view text, const MarketInstance& market);

ordered_json certificate_to_json(const MarketInstance& market, const BlockingCertificate& certificate);
ordered_json ps1_violation_to_json(const MarketInstance& market, const Ps1Violation& violation);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace jobmatch
