#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "greenassoc/config.hpp"

namespace greenassoc::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kSolverFailure = 2, kValidationFailure = 3 };

/// Flags shared by every subcommand.
struct CommonOptions {
  /// Empty runs on the built-in defaults.
  std::string config_path;
  /// CSV destination; empty writes it to the output stream.
  std::string out_path;
  std::string engine = "both";
  /// Names or aliases; empty selects all four schemes.
  std::vector<std::string> schemes;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<int> replications;
  std::optional<int> slots;
  std::optional<int> warmup;
  int threads = 0;
  bool timing = false;
};

struct SweepOptions {
  std::string param = "beta_a";
  std::string values;
};

struct ValidateOptions {
  bool cross_engine = true;
  bool debug_double_prx = false;
  int realizations = 1000;
};

/// Loads the config, applies overrides and validates it.
/// Violations are written to `err`; returns nullopt when the config is unusable.
std::optional<NetworkConfig> load_checked(const CommonOptions& options, std::ostream& err);

int cmd_analyze(const CommonOptions& options, std::ostream& out, std::ostream& err);
int cmd_simulate(const CommonOptions& options, std::ostream& out, std::ostream& err);
int cmd_sweep(const CommonOptions& options, const SweepOptions& sweep, std::ostream& out, std::ostream& err);
int cmd_validate(const CommonOptions& options, const ValidateOptions& validate, std::ostream& out,
                 std::ostream& err);

}  // namespace greenassoc::cli
