#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cli/commands.hpp"

namespace ga = greenassoc::cli;

namespace {

void add_common(CLI::App& cmd, ga::CommonOptions& o, bool engines, bool sim_flags) {
  cmd.add_option("--config", o.config_path, "Scenario file (key = value); defaults when omitted");
  cmd.add_option("--out", o.out_path, "CSV output path; standard output when omitted");
  cmd.add_option("--scheme", o.schemes, "CA-Abeta, CA-Fbeta, CA-noBeta, Best-CA (repeatable; all by default)");
  cmd.add_option("--seed", o.seed, "Random seed");
  cmd.add_option("--tol", o.tol, "Fixed-point tolerance on the joint L1 step");
  if (engines)
    cmd.add_option("--engine", o.engine, "analytic, sim or both")->check(CLI::IsMember({"analytic", "sim", "both"}));
  if (sim_flags) {
    cmd.add_option("--replications", o.replications, "Monte-Carlo replications")->check(CLI::PositiveNumber);
    cmd.add_option("--slots", o.slots, "Measured slots per replication")->check(CLI::PositiveNumber);
    cmd.add_option("--warmup", o.warmup, "Warm-up slots per replication")->check(CLI::NonNegativeNumber);
    cmd.add_option("--threads", o.threads, "Replication worker threads (0: hardware)")->check(CLI::NonNegativeNumber);
  }
  cmd.add_flag("--timing", o.timing, "Fill the runtime_s column");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive-bias cell association: analytical solver and Monte-Carlo simulator"};
  app.require_subcommand(1);

  ga::CommonOptions common;
  ga::SweepOptions sweep;
  ga::ValidateOptions validate;

  CLI::App* analyze = app.add_subcommand("analyze", "Solve the battery equilibrium and report metrics");
  add_common(*analyze, common, false, false);

  CLI::App* simulate = app.add_subcommand("simulate", "Run Monte-Carlo replications and report metrics");
  add_common(*simulate, common, false, true);

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Sweep one parameter over a grid and write CSV");
  add_common(*sweep_cmd, common, true, true);
  sweep_cmd->add_option("--param", sweep.param, "beta_a, mean_spacing_r, hybrid_fraction_c or og_spacing_r")
      ->check(CLI::IsMember({"beta_a", "mean_spacing_r", "hybrid_fraction_c", "og_spacing_r"}));
  sweep_cmd->add_option("--values", sweep.values, "Grid: a,b,c or start:stop:step")->required();

  CLI::App* validate_cmd = app.add_subcommand("validate", "Run the oracle checks and report pass/fail");
  add_common(*validate_cmd, common, false, true);
  bool skip_cross = false;
  validate_cmd->add_flag("--no-cross-engine", skip_cross, "Skip the analytic versus simulation comparison");
  validate_cmd->add_flag("--debug-double-prx", validate.debug_double_prx,
                         "Negative control: apply the receive-power factor twice in the displacement formula");
  validate_cmd->add_option("--realizations", validate.realizations, "Geometry realizations per check")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ga::kInputError;
  }
  validate.cross_engine = !skip_cross;

  if (analyze->parsed()) return ga::cmd_analyze(common, std::cout, std::cerr);
  if (simulate->parsed()) return ga::cmd_simulate(common, std::cout, std::cerr);
  if (sweep_cmd->parsed()) return ga::cmd_sweep(common, sweep, std::cout, std::cerr);
  return ga::cmd_validate(common, validate, std::cout, std::cerr);
}
