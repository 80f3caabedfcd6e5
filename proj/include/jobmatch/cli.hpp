#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "jobmatch/generator.hpp"
#include "jobmatch/solver.hpp"
#include "jobmatch/verify.hpp"

namespace jobmatch::cli {

enum ExitCode : int {
  kStable = 0,
  kUnstable = 1,
  kInvalidInput = 2,
  kInvariantFailure = 3,
};

// Diagnostics go to the error stream as
//   error[E_VALIDATION] path: message
// with codes E_IO, E_FORMAT, E_VALIDATION, E_INVARIANT, E_UNSTABLE, E_ARGS,
// and warnings W_PAYOFF_MISMATCH, W_STABLE_FLAG.

struct SolveOptions {
  std::filesystem::path instance;  // file, or directory for batch mode
  /// Outcome destination. Single file: defaults to the output stream.
  /// Batch: directory for <stem>.outcome.json, defaults to the input directory.
  std::optional<std::filesystem::path> output;
  /// Single file: trace path. Batch: directory for <stem>.trace.jsonl.
  std::optional<std::filesystem::path> trace;
  SolverConfig config;
  Ps2Domain ps2_domain = Ps2Domain::Unmatched;
  unsigned jobs = 1;
};

struct CheckOptions {
  std::filesystem::path instance;  // file, or directory for batch mode
  /// Single file: the outcome document. Batch: directory holding
  /// <stem>.outcome.json, defaults to the instance directory.
  std::optional<std::filesystem::path> outcome;
  Ps2Domain ps2_domain = Ps2Domain::Unmatched;
  unsigned jobs = 1;
};

struct GenOptions {
  GeneratorParams params;
  std::optional<std::filesystem::path> output;  // defaults to the output stream
};

int cmd_solve(const SolveOptions& options, std::ostream& out, std::ostream& err);
int cmd_check(const CheckOptions& options, std::ostream& out, std::ostream& err);
int cmd_gen(const GenOptions& options, std::ostream& out, std::ostream& err);

}  // namespace jobmatch::cli
