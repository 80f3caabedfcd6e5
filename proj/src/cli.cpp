#include "jobmatch/cli.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "jobmatch/io.hpp"

namespace jobmatch::cli {

namespace fs = std::filesystem;

namespace {

struct FileResult {
  int code = kStable;
  std::string out;
  std::string err;
};

void diagnose(std::string& err, const char* code, const std::string& subject, const std::string& message,
              bool warning = false) {
  err += warning ? "warning[" : "error[";
  err += code;
  err += "] ";
  if (!subject.empty()) err += subject + ": ";
  err += message;
  err += '\n';
}

bool is_outcome_name(const fs::path& p) {
  const std::string name = p.filename().string();
  const std::string suffix = ".outcome.json";
  return name.size() >= suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::vector<fs::path> instance_files(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    if (entry.path().extension() != ".json" || is_outcome_name(entry.path())) continue;
    files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

// Runs `task` over every file with up to `jobs` threads; results stay in file order.
std::vector<FileResult> run_batch(const std::vector<fs::path>& files, unsigned jobs,
                                  const std::function<FileResult(const fs::path&)>& task) {
  std::vector<FileResult> results(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < files.size(); k = next++) results[k] = task(files[k]);
  };
  const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(files.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return results;
}

const char* verdict_name(int code) {
  switch (code) {
    case kStable: return "stable";
    case kUnstable: return "unstable";
    case kInvalidInput: return "invalid";
    default: return "invariant-failure";
  }
}

// Loads an instance, reporting failures; nullopt means exit 2.
std::optional<MarketInstance> load_checked(const fs::path& path, std::string& err) {
  const std::string subject = path.string();
  try {
    if (!fs::is_regular_file(path)) {
      diagnose(err, "E_IO", subject, "no such file");
      return std::nullopt;
    }
    return load_instance(path);
  } catch (const ValidationError& ex) {
    for (const auto& issue : ex.issues()) diagnose(err, "E_VALIDATION", subject, issue.subject + ": " + issue.message);
  } catch (const FormatError& ex) {
    diagnose(err, "E_FORMAT", subject, ex.what());
  }
  return std::nullopt;
}

void report_verdict(const MarketInstance& market, const StabilityVerdict& verdict, std::string& out) {
  if (verdict.stable()) {
    out += "pass\n";
  } else if (!verdict.ps1_violations.empty()) {
    out += ps1_violation_to_json(market, verdict.ps1_violations.front()).dump() + "\n";
  } else {
    out += certificate_to_json(market, *verdict.blocking).dump() + "\n";
  }
}

FileResult solve_file(const SolveOptions& options, const fs::path& instance, const std::optional<fs::path>& outcome_path,
                      const std::optional<fs::path>& trace_path) {
  FileResult result;
  const auto market = load_checked(instance, result.err);
  if (!market) {
    result.code = kInvalidInput;
    return result;
  }
  const std::string subject = instance.string();
  try {
    const RunResult solved = run(*market, options.config);
    const StabilityVerdict verdict = check_stable(solved.outcome, *market, options.ps2_domain);
    const std::string doc = outcome_to_json(*market, solved.outcome, solved.iterations, verdict.stable()).dump(2) + "\n";
    if (outcome_path) {
      write_file(*outcome_path, doc);
    } else {
      result.out += doc;
    }
    if (trace_path) write_file(*trace_path, trace_to_jsonl(*market, solved.trace));
    if (!verdict.stable()) {
      std::string detail;
      report_verdict(*market, verdict, detail);
      detail.pop_back();
      diagnose(result.err, "E_UNSTABLE", subject, detail);
      result.code = kUnstable;
    }
  } catch (const InvariantViolation& ex) {
    diagnose(result.err, "E_INVARIANT", subject, ex.what());
    result.code = kInvariantFailure;
  } catch (const FormatError& ex) {
    diagnose(result.err, "E_IO", subject, ex.what());
    result.code = kInvalidInput;
  } catch (const std::exception& ex) {
    diagnose(result.err, "E_INVARIANT", subject, std::string("internal error: ") + ex.what());
    result.code = kInvariantFailure;
  }
  return result;
}

FileResult check_file(const CheckOptions& options, const fs::path& instance, const fs::path& outcome_path) {
  FileResult result;
  const auto market = load_checked(instance, result.err);
  if (!market) {
    result.code = kInvalidInput;
    return result;
  }
  OutcomeDocument doc;
  try {
    if (!fs::is_regular_file(outcome_path)) {
      diagnose(result.err, "E_IO", outcome_path.string(), "no such file");
      result.code = kInvalidInput;
      return result;
    }
    doc = load_outcome(outcome_path, *market);
  } catch (const FormatError& ex) {
    diagnose(result.err, "E_FORMAT", outcome_path.string(), ex.what());
    result.code = kInvalidInput;
    return result;
  }

  const std::string subject = outcome_path.string();
  for (std::size_t w = 0; w < market->workers().size(); ++w) {
    if (doc.recorded_worker_payoffs[w] != doc.outcome.worker_payoffs[w]) {
      diagnose(result.err, "W_PAYOFF_MISMATCH", subject,
               "worker " + market->workers()[w] + " recorded " + std::to_string(doc.recorded_worker_payoffs[w]) +
                   ", recomputed " + std::to_string(doc.outcome.worker_payoffs[w]),
               true);
    }
  }
  for (std::size_t f = 0; f < market->firms().size(); ++f) {
    if (doc.recorded_firm_payoffs[f] != doc.outcome.firm_payoffs[f]) {
      diagnose(result.err, "W_PAYOFF_MISMATCH", subject,
               "firm " + market->firms()[f].id + " recorded " + std::to_string(doc.recorded_firm_payoffs[f]) +
                   ", recomputed " + std::to_string(doc.outcome.firm_payoffs[f]),
               true);
    }
  }

  const StabilityVerdict verdict = check_stable(doc.outcome, *market, options.ps2_domain);
  if (doc.stable != verdict.stable()) {
    diagnose(result.err, "W_STABLE_FLAG", subject,
             std::string("document says stable=") + (doc.stable ? "true" : "false") + ", checker disagrees", true);
  }
  report_verdict(*market, verdict, result.out);
  result.code = verdict.stable() ? kStable : kUnstable;
  return result;
}

int flush(const FileResult& r, std::ostream& out, std::ostream& err) {
  out << r.out;
  err << r.err;
  return r.code;
}

int summarize(const std::vector<fs::path>& files, const std::vector<FileResult>& results, std::ostream& out,
              std::ostream& err) {
  int code = kStable;
  for (std::size_t k = 0; k < files.size(); ++k) {
    err << results[k].err;
    out << files[k].filename().string() << ": " << verdict_name(results[k].code);
    std::string line = results[k].out;
    if (!line.empty() && line != "pass\n" && line.front() == '{') out << " " << line.substr(0, line.size() - 1);
    out << '\n';
    code = std::max(code, results[k].code);
  }
  return code;
}

std::string stem_of(const fs::path& p) { return p.stem().string(); }

}  // namespace

int cmd_solve(const SolveOptions& options, std::ostream& out, std::ostream& err) {
  if (!fs::is_directory(options.instance)) {
    return flush(solve_file(options, options.instance, options.output, options.trace), out, err);
  }
  const fs::path out_dir = options.output.value_or(options.instance);
  std::string setup;
  try {
    fs::create_directories(out_dir);
    if (options.trace) fs::create_directories(*options.trace);
  } catch (const fs::filesystem_error& ex) {
    diagnose(setup, "E_IO", out_dir.string(), ex.what());
    err << setup;
    return kInvalidInput;
  }
  const auto files = instance_files(options.instance);
  const auto results = run_batch(files, options.jobs, [&](const fs::path& file) {
    std::optional<fs::path> trace;
    if (options.trace) trace = *options.trace / (stem_of(file) + ".trace.jsonl");
    return solve_file(options, file, out_dir / (stem_of(file) + ".outcome.json"), trace);
  });
  return summarize(files, results, out, err);
}

int cmd_check(const CheckOptions& options, std::ostream& out, std::ostream& err) {
  if (!fs::is_directory(options.instance)) {
    if (!options.outcome) {
      std::string msg;
      diagnose(msg, "E_ARGS", "", "an outcome file is required");
      err << msg;
      return kInvalidInput;
    }
    return flush(check_file(options, options.instance, *options.outcome), out, err);
  }
  const fs::path outcome_dir = options.outcome.value_or(options.instance);
  const auto files = instance_files(options.instance);
  const auto results = run_batch(files, options.jobs, [&](const fs::path& file) {
    return check_file(options, file, outcome_dir / (stem_of(file) + ".outcome.json"));
  });
  return summarize(files, results, out, err);
}

int cmd_gen(const GenOptions& options, std::ostream& out, std::ostream& err) {
  std::string msg;
  try {
    const std::string doc = raw_instance_to_json(generate_instance(options.params)).dump(2) + "\n";
    if (options.output) {
      write_file(*options.output, doc);
    } else {
      out << doc;
    }
    return kStable;
  } catch (const std::invalid_argument& ex) {
    diagnose(msg, "E_ARGS", "", ex.what());
  } catch (const FormatError& ex) {
    diagnose(msg, "E_IO", options.output ? options.output->string() : "", ex.what());
  }
  err << msg;
  return kInvalidInput;
}

}  // namespace jobmatch::cli
