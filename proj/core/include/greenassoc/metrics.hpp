#pragma once

#include <optional>
#include <string>

namespace greenassoc {

/// Network-level performance of one scheme at one operating point.
///
/// Powers are averages per slot. Half-widths are 95% confidence bounds and
/// stay 0 for the analytical engine.
struct MetricsReport {
  /// Absent when no user was observed.
  std::optional<double> outage_prob;
  double outage_ci = 0.0;
  double grid_power_og_mw_per_m2 = 0.0;
  double grid_power_hy_mw_per_m2 = 0.0;
  /// (og + hy) per m2 times the simulated area.
  double grid_power_total_mw = 0.0;
  double grid_power_ci = 0.0;
  double users_per_slot = 0.0;
  std::string note;

  double grid_power_mw_per_m2() const { return grid_power_og_mw_per_m2 + grid_power_hy_mw_per_m2; }
};

/// Share of the no-bias to ideal headroom in grid power that a biased scheme recovers, in percent.
/// 0 for a scheme equal to no-bias, 100 for one matching the ideal; negative when biasing costs
/// grid power. Absent when the headroom is below 1e-15 in magnitude.
std::optional<double> gain_rho(double grid_biased, double grid_nobias, double grid_best);
std::optional<double> gain_rho(const MetricsReport& biased, const MetricsReport& nobias, const MetricsReport& best);

/// (p_scheme - p_best) / p_best. Absent when p_best is 0 or unknown.
std::optional<double> outage_loss(double p_out_scheme, double p_out_best);
std::optional<double> outage_loss(const MetricsReport& scheme, const MetricsReport& best);

}  // namespace greenassoc
