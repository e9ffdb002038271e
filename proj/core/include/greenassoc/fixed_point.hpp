#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "greenassoc/analysis.hpp"
#include "greenassoc/association.hpp"
#include "greenassoc/config.hpp"
#include "greenassoc/metrics.hpp"

namespace greenassoc {

struct SolverOptions {
  /// L1 distance between successive joint (EH, HY) iterates.
  double tol = 1e-6;
  int max_iter = 500;
  /// v <- (1 - d) v' + d v.
  double damping = 0.2;
  /// Chain steps per outer iteration; 0 solves each chain to stationarity.
  int inner_steps = 0;
  /// Tolerance of the inner and final stationary solves.
  double stationary_tol = 1e-13;
  /// Average a period-two cycle instead of failing.
  bool average_oscillation = true;
};

/// Joint battery equilibrium of one scheme.
struct Equilibrium {
  Scheme scheme = Scheme::no_bias();
  BatteryVectors v;
  /// Transition matrices the final v is stationary for; empty for full-battery schemes.
  Eigen::MatrixXd transition_eh;
  Eigen::MatrixXd transition_hy;
  StateDemand demand_eh;
  StateDemand demand_hy;
  double og_grid_mw = 0.0;
  int iterations = 0;
  /// Last outer-loop step.
  double residual = 0.0;
  std::vector<double> residual_trace;
  /// L1 norm of vP - v over both chains after the final solve.
  double stationarity_residual = 0.0;
  bool oscillation_averaged = false;
  /// Batteries are full by assumption, not by solving.
  bool degenerate = false;
};

/// The outer loop failed: carries the last two iterates for diagnosis.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, BatteryVectors last, BatteryVectors previous, std::vector<double> trace)
      : std::runtime_error(what), last_(std::move(last)), previous_(std::move(previous)), trace_(std::move(trace)) {}

  const BatteryVectors& last() const { return last_; }
  const BatteryVectors& previous() const { return previous_; }
  const std::vector<double>& residual_trace() const { return trace_; }

 private:
  BatteryVectors last_;
  BatteryVectors previous_;
  std::vector<double> trace_;
};

/// Iterates densities, association, served users, consumption and chains from
/// uniform battery distributions until the joint vector settles. The returned
/// vectors are then re-solved against the final transition matrices so they
/// are exactly stationary for them.
Equilibrium solve(const NetworkConfig& config, const Scheme& scheme, const SolverOptions& options = {});

/// Outage and grid power of an equilibrium; totals over the configured area.
MetricsReport metrics(const Equilibrium& eq, const NetworkConfig& config);

/// solve + metrics.
MetricsReport analyze(const NetworkConfig& config, const Scheme& scheme, const SolverOptions& options = {});

}  // namespace greenassoc
