// jobmatch: solve, check and generate job matching instances.

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "jobmatch/cli.hpp"

namespace {

bool parse_on_off(const std::string& v) { return v == "on"; }

}  // namespace

int main(int argc, char** argv) {
  using namespace jobmatch;
  CLI::App app{"Pairwise-stable many-to-one job matching with bounded integer salaries"};
  app.require_subcommand(1);

  const std::map<std::string, FloorPolicy> floor_policies{{"occupancy", FloorPolicy::Occupancy},
                                                          {"nonempty", FloorPolicy::NonEmpty}};
  const std::map<std::string, RejectionRule> rejection_rules{{"unmatched-workers", RejectionRule::UnmatchedWorkers},
                                                             {"all-unmatched-pairs", RejectionRule::AllUnmatchedPairs}};
  const std::map<std::string, Ps2Domain> ps2_domains{{"unmatched", Ps2Domain::Unmatched}, {"all", Ps2Domain::All}};

  cli::SolveOptions solve;
  std::string assert_invariants = "on";
  std::string solve_output, solve_trace;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance file, or every instance in a directory");
  solve_cmd->add_option("instance", solve.instance, "Instance file or directory")->required();
  solve_cmd->add_option("-o,--output", solve_output, "Outcome file (batch: output directory)");
  solve_cmd->add_option("--trace", solve_trace, "Trace file, JSON lines (batch: output directory)");
  solve_cmd->add_option("--assert-invariants", assert_invariants, "Check invariants at runtime")
      ->check(CLI::IsMember({"on", "off"}));
  solve_cmd->add_option("--x1", solve.config.floor_policy, "Firm floor rule")
      ->transform(CLI::CheckedTransformer(floor_policies));
  solve_cmd->add_option("--rejection", solve.config.rejection, "Which unmatched preferred pairs get salary cuts")
      ->transform(CLI::CheckedTransformer(rejection_rules));
  solve_cmd->add_option("--ps2-domain", solve.ps2_domain, "Pairs allowed to block in the self-check")
      ->transform(CLI::CheckedTransformer(ps2_domains));
  solve_cmd->add_option("--jobs", solve.jobs, "Parallel files in batch mode")->check(CLI::Range(1u, 1024u));

  cli::CheckOptions check;
  std::string check_outcome;
  auto* check_cmd = app.add_subcommand("check", "Check an outcome for pairwise stability");
  check_cmd->add_option("instance", check.instance, "Instance file or directory")->required();
  check_cmd->add_option("outcome", check_outcome, "Outcome file (batch: directory of <stem>.outcome.json)");
  check_cmd->add_option("--ps2-domain", check.ps2_domain, "Pairs allowed to block")
      ->transform(CLI::CheckedTransformer(ps2_domains));
  check_cmd->add_option("--jobs", check.jobs, "Parallel files in batch mode")->check(CLI::Range(1u, 1024u));

  cli::GenOptions gen;
  std::string gen_output;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
  gen_cmd->add_option("--seed", gen.params.seed, "Random seed");
  gen_cmd->add_option("--workers", gen.params.workers, "Number of workers")->check(CLI::Range(1, 1000));
  gen_cmd->add_option("--firms", gen.params.firms, "Number of firms")->check(CLI::Range(1, 1000));
  gen_cmd->add_option("--max-quota", gen.params.max_quota, "Largest firm quota")->check(CLI::Range(1, 1000));
  gen_cmd->add_option("--max-span", gen.params.max_span, "Largest max_salary - min_salary")
      ->check(CLI::Range(0, 100000));
  gen_cmd->add_option("--density", gen.params.density_percent, "Percent of admissible pairs")
      ->check(CLI::Range(0, 100));
  gen_cmd->add_flag("--fixed-salaries", gen.params.fixed_salaries, "Fixed salaries with strict preferences");
  gen_cmd->add_option("-o,--output", gen_output, "Output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() != 0) std::cerr << "error[E_ARGS] " << e.what() << "\n";
    else app.exit(e);
    return e.get_exit_code() == 0 ? 0 : cli::kInvalidInput;
  }

  if (*solve_cmd) {
    solve.config.assert_invariants = parse_on_off(assert_invariants);
    if (!solve_output.empty()) solve.output = solve_output;
    if (!solve_trace.empty()) solve.trace = solve_trace;
    return cli::cmd_solve(solve, std::cout, std::cerr);
  }
  if (*check_cmd) {
    if (!check_outcome.empty()) check.outcome = check_outcome;
    return cli::cmd_check(check, std::cout, std::cerr);
  }
  if (!gen_output.empty()) gen.output = gen_output;
  return cli::cmd_gen(gen, std::cout, std::cerr);
}
