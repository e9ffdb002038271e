#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "greenassoc/config.hpp"

namespace greenassoc {

/// Harvested units per slot. prob[m] for m < cap is exact; prob[cap] holds P(H >= cap).
struct HarvestPmf {
  std::vector<double> prob;

  int cap() const { return static_cast<int>(prob.size()) - 1; }
  double operator[](int m) const { return m >= 0 && m < static_cast<int>(prob.size()) ? prob[m] : 0.0; }
  /// Non-zero entries as (units, probability).
  std::vector<std::pair<int, double>> atoms() const;
  double mean() const;
};

/// Units harvested in one slot: burst_units * K with K ~ Poisson(mean / burst_units).
HarvestPmf harvest_pmf(const HarvestSpec& spec, int cap_units);

/// max(10 x mean, capacity + maximum consumption); beyond it every step saturates.
int harvest_truncation_bound(const HarvestSpec& spec, int capacity_units);

/// Mean number of users whose rounded-up demand is exactly q units, q = 1..Q.
/// atoms[q - 1] = Omega(min(q eps, cap)) - Omega(min((q - 1) eps, cap)).
std::vector<double> demand_atoms(const std::function<double(double)>& cumulative_intensity, double cap_mw,
                                 double unit_mw);

/// Compound-Poisson total of independent Poisson(atoms[q-1]) counts of q-unit demands,
/// P(0) = exp(-sum atoms), P(m) = sum_q (q/m) atoms[q-1] P(m - q). Unnormalized
/// (absolute) probabilities for m = 0..max_total.
std::vector<double> compound_poisson_pmf(std::span<const double> atoms, int max_total);

/// Same recursion scaled so the largest entry is O(1); true values are
/// result.first[m] * exp(result.second). Safe for large total means.
std::pair<std::vector<double>, double> compound_poisson_pmf_scaled(std::span<const double> atoms, int max_total);

/// P_T(m | l), m = 0..l, from the compound-Poisson total conditioned per `norm`.
/// l = 0, or a state where nothing can be served, is a point mass at 0.
std::vector<double> consumption_row(std::span<const double> atoms, int l, ConsumptionNormalization norm);

/// consumption_row for the users of cumulative intensity `omega`, capped at cap_mw.
std::vector<double> total_consumption_pmf(const std::function<double(double)>& omega, int l, double cap_mw,
                                          const BatterySpec& battery, ConsumptionNormalization norm);

/// rows[l][m] = P_T(m | l), m = 0..l.
using ConsumptionTable = std::vector<std::vector<double>>;

double row_mean(std::span<const double> row);

/// P(l -> q) = sum_m P_T(m|l) P_H(q - l + m), saturating at capacity.
Eigen::MatrixXd transition_matrix(const ConsumptionTable& consumption, const HarvestPmf& harvest, int capacity_units);

struct StationaryOptions {
  double tol = 1e-12;
  int max_iter = 200000;
  /// Uniform when absent.
  std::optional<Eigen::RowVectorXd> start;
};

struct StationaryResult {
  Eigen::RowVectorXd v;
  /// L1 norm of vP - v at the returned v.
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Power iteration v <- vP until the L1 step falls below tol.
StationaryResult stationary(const Eigen::MatrixXd& transition, const StationaryOptions& options = {});

double stationarity_residual(const Eigen::RowVectorXd& v, const Eigen::MatrixXd& transition);
double max_row_sum_error(const Eigen::MatrixXd& transition);

/// Battery Markov chain of one BS type.
struct BatteryChain {
  BatterySpec spec;
  Eigen::MatrixXd transition;
  Eigen::RowVectorXd stationary;
};

}  // namespace greenassoc
