#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "greenassoc/config.hpp"
#include "greenassoc/fixed_point.hpp"
#include "greenassoc/simulator.hpp"

namespace greenassoc::cli {

enum class CheckStatus { Pass, Fail, Skipped };

std::string_view to_string(CheckStatus status);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Skipped;
  /// Worst measured deviation, in the unit `limit` is stated in.
  double deviation = 0.0;
  double limit = 0.0;
  std::string detail;
};

struct ValidationOptions {
  std::uint64_t seed = 1;
  int panjer_cases = 50;
  int realizations = 1000;
  /// Also compare analytic and simulated metrics; the slow check.
  bool cross_engine = true;
  /// Negative control: applies the (P_Rx kappa)^(-2/alpha) factor a second
  /// time in the displacement formula, which the check must then reject.
  bool debug_double_prx = false;
  SolverOptions solver;
  SimulationOptions simulation;
};

/// Recursive compound-Poisson pmf against exhaustive enumeration.
CheckResult check_panjer(const ValidationOptions& options);
/// Empirical BS counts by required power against Lambda_X(p), in standard deviations.
CheckResult check_displacement(const NetworkConfig& config, const ValidationOptions& options);
/// BSs available at their own demand, batteries drawn from a uniform vector, against Lambda_X^(A)(p).
CheckResult check_thinning(const NetworkConfig& config, const ValidationOptions& options);
/// Available BSs by biased power beta_a p <= beta_g t, with beta_a = 2 and beta_g = 1.
CheckResult check_scaled(const NetworkConfig& config, const ValidationOptions& options);
/// |vP - v|_1 and row sums of every solved equilibrium.
CheckResult check_stationarity(const NetworkConfig& config, const ValidationOptions& options);
/// Analytic outage and grid power within 10% of the simulated CI midpoints, adaptive scheme.
CheckResult check_cross_engine(const NetworkConfig& config, const ValidationOptions& options);

std::vector<CheckResult> run_validation(const NetworkConfig& config, const ValidationOptions& options);

bool all_passed(const std::vector<CheckResult>& results);

/// CSV: check,status,deviation,limit,detail.
void write_report(std::ostream& out, const std::vector<CheckResult>& results);

}  // namespace greenassoc::cli
