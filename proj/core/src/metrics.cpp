#include "greenassoc/metrics.hpp"

#include <cmath>

namespace greenassoc {

std::optional<double> gain_rho(double grid_biased, double grid_nobias, double grid_best) {
  const double headroom = grid_nobias - grid_best;
  if (!(std::abs(headroom) >= 1e-15)) return std::nullopt;
  return 100.0 * (grid_nobias - grid_biased) / headroom;
}

std::optional<double> gain_rho(const MetricsReport& biased, const MetricsReport& nobias, const MetricsReport& best) {
  return gain_rho(biased.grid_power_total_mw, nobias.grid_power_total_mw, best.grid_power_total_mw);
}

std::optional<double> outage_loss(double p_out_scheme, double p_out_best) {
  if (!(p_out_best > 0.0)) return std::nullopt;
  return (p_out_scheme - p_out_best) / p_out_best;
}

std::optional<double> outage_loss(const MetricsReport& scheme, const MetricsReport& best) {
  if (!scheme.outage_prob || !best.outage_prob) return std::nullopt;
  return outage_loss(*scheme.outage_prob, *best.outage_prob);
}

}  // namespace greenassoc
