#include "greenassoc/fixed_point.hpp"

#include <cmath>
#include <sstream>

#include "greenassoc/battery_chain.hpp"

namespace greenassoc {

namespace {

struct Step {
  Eigen::MatrixXd p_eh;
  Eigen::MatrixXd p_hy;
  StateDemand demand_eh;
  StateDemand demand_hy;
  double og_mw = 0.0;
};

Step evaluate(const NetworkConfig& config, const Scheme& scheme, const BatteryVectors& v, const HarvestPmf& h_eh,
              const HarvestPmf& h_hy) {
  const Landscape land(config, scheme, v);
  Step s;
  s.demand_eh = land.demand(BsType::EH);
  s.demand_hy = land.demand(BsType::HY);
  s.og_mw = land.og_grid_mw();
  s.p_eh = transition_matrix(s.demand_eh.battery_rows, h_eh, config.battery_eh.capacity_units);
  s.p_hy = transition_matrix(s.demand_hy.battery_rows, h_hy, config.battery_hy.capacity_units);
  return s;
}

Eigen::RowVectorXd advance(const Eigen::MatrixXd& p, const Eigen::RowVectorXd& v, const SolverOptions& options) {
  if (options.inner_steps <= 0) {
    StationaryOptions so;
    so.tol = options.stationary_tol;
    so.start = v;
    return stationary(p, so).v;
  }
  Eigen::RowVectorXd w = v;
  for (int k = 0; k < options.inner_steps; ++k) {
    w = w * p;
    w /= w.sum();
  }
  return w;
}

double joint_distance(const BatteryVectors& a, const BatteryVectors& b) {
  return (a.eh - b.eh).lpNorm<1>() + (a.hy - b.hy).lpNorm<1>();
}

}  // namespace

Equilibrium solve(const NetworkConfig& config, const Scheme& scheme, const SolverOptions& options) {
  if (!(options.damping >= 0.0 && options.damping < 1.0)) throw std::invalid_argument("damping must lie in [0, 1)");
  if (!(options.tol > 0.0)) throw std::invalid_argument("tolerance must be positive");

  Equilibrium eq;
  eq.scheme = scheme;

  if (scheme.assumes_full_batteries()) {
    eq.v = BatteryVectors::full(config);
    const Landscape land(config, scheme, eq.v);
    eq.demand_eh = land.demand(BsType::EH);
    eq.demand_hy = land.demand(BsType::HY);
    eq.og_grid_mw = land.og_grid_mw();
    eq.degenerate = true;
    return eq;
  }

  const HarvestPmf h_eh =
      harvest_pmf(config.harvest_eh, harvest_truncation_bound(config.harvest_eh, config.battery_eh.capacity_units));
  const HarvestPmf h_hy =
      harvest_pmf(config.harvest_hy, harvest_truncation_bound(config.harvest_hy, config.battery_hy.capacity_units));

  BatteryVectors v = BatteryVectors::uniform(config);
  BatteryVectors previous = v;
  BatteryVectors before_previous = v;
  bool converged = false;
  const double d = options.damping;
  for (int it = 1; it <= options.max_iter; ++it) {
    const Step s = evaluate(config, scheme, v, h_eh, h_hy);
    BatteryVectors next;
    next.eh = (1.0 - d) * advance(s.p_eh, v.eh, options) + d * v.eh;
    next.hy = (1.0 - d) * advance(s.p_hy, v.hy, options) + d * v.hy;
    next.eh /= next.eh.sum();
    next.hy /= next.hy.sum();

    const double step = joint_distance(next, v);
    eq.residual_trace.push_back(step);
    eq.iterations = it;
    eq.residual = step;
    before_previous = std::move(previous);
    previous = std::move(v);
    v = std::move(next);
    if (step < options.tol) {
      converged = true;
      break;
    }
  }

  if (!converged) {
    // A period-two cycle returns close to the iterate two steps back.
    const double two_back = joint_distance(v, before_previous);
    if (options.average_oscillation && eq.iterations >= 2 && two_back < 0.1 * eq.residual) {
      v.eh = 0.5 * (v.eh + previous.eh);
      v.hy = 0.5 * (v.hy + previous.hy);
      eq.oscillation_averaged = true;
    } else {
      std::ostringstream msg;
      msg << "fixed point did not converge after " << eq.iterations << " iterations (residual " << eq.residual
          << ")";
      throw ConvergenceError(msg.str(), v, previous, eq.residual_trace);
    }
  }

  Step final_step = evaluate(config, scheme, v, h_eh, h_hy);
  StationaryOptions so;
  so.tol = options.stationary_tol;
  so.start = v.eh;
  eq.v.eh = stationary(final_step.p_eh, so).v;
  so.start = v.hy;
  eq.v.hy = stationary(final_step.p_hy, so).v;
  eq.transition_eh = std::move(final_step.p_eh);
  eq.transition_hy = std::move(final_step.p_hy);
  eq.demand_eh = std::move(final_step.demand_eh);
  eq.demand_hy = std::move(final_step.demand_hy);
  eq.og_grid_mw = final_step.og_mw;
  eq.stationarity_residual =
      stationarity_residual(eq.v.eh, eq.transition_eh) + stationarity_residual(eq.v.hy, eq.transition_hy);
  return eq;
}

MetricsReport metrics(const Equilibrium& eq, const NetworkConfig& config) {
  MetricsReport r;
  r.outage_prob = outage_probability(eq.v, config);
  const GridPower g = grid_power(eq.v, eq.demand_hy, eq.og_grid_mw, config);
  r.grid_power_og_mw_per_m2 = g.og_mw_per_m2;
  r.grid_power_hy_mw_per_m2 = g.hy_mw_per_m2;
  r.grid_power_total_mw = g.total_mw_per_m2() * config.sim_area_m2;
  r.users_per_slot = config.omega * config.sim_area_m2;
  if (eq.oscillation_averaged) r.note = "oscillation averaged";
  return r;
}

MetricsReport analyze(const NetworkConfig& config, const Scheme& scheme, const SolverOptions& options) {
  return metrics(solve(config, scheme, options), config);
}

}  // namespace greenassoc
