#include <gtest/gtest.h>

#include "greenassoc/fixed_point.hpp"
#include "greenassoc/radio.hpp"

using namespace greenassoc;

namespace {

double mean_level(const Eigen::RowVectorXd& v) {
  double m = 0.0;
  for (Eigen::Index l = 0; l < v.size(); ++l) m += static_cast<double>(l) * v(l);
  return m;
}

}  // namespace

TEST(Solve, NoUsersFillsBatteries) {
  NetworkConfig c = NetworkConfig::defaults();
  c.omega = 0.0;
  const Equilibrium eq = solve(c, Scheme::adaptive(2.0, 1.0));
  EXPECT_NEAR(eq.v.eh(c.battery_eh.capacity_units), 1.0, 1e-9);
  EXPECT_NEAR(eq.v.hy(c.battery_hy.capacity_units), 1.0, 1e-9);
}

TEST(Solve, NoHarvestDrainsBatteries) {
  NetworkConfig c = NetworkConfig::defaults();
  c.harvest_eh.mean_units_per_slot = 0.0;
  c.harvest_hy.mean_units_per_slot = 0.0;
  const Equilibrium eq = solve(c, Scheme::no_bias());
  EXPECT_NEAR(eq.v.eh(0), 1.0, 1e-9);
  EXPECT_NEAR(eq.v.hy(0), 1.0, 1e-9);
}

TEST(Solve, DefaultsConvergeBetweenLimits) {
  const NetworkConfig c = NetworkConfig::defaults();
  const Equilibrium eq = solve(c, Scheme::adaptive(1.0, 1.0));
  EXPECT_LT(eq.residual, 1e-6);
  EXPECT_FALSE(eq.oscillation_averaged);
  EXPECT_LT(eq.stationarity_residual, 1e-9);
  EXPECT_LT(max_row_sum_error(eq.transition_eh), 1e-10);
  EXPECT_LT(max_row_sum_error(eq.transition_hy), 1e-10);
  EXPECT_NEAR(eq.v.hy.sum(), 1.0, 1e-12);
  const double m = mean_level(eq.v.hy);
  EXPECT_GT(m, 1.0);
  EXPECT_LT(m, c.battery_hy.capacity_units - 1.0);
}

TEST(Solve, TighterToleranceTightensResidual) {
  const NetworkConfig c = NetworkConfig::defaults();
  SolverOptions loose, tight;
  loose.tol = 1e-4;
  tight.tol = 1e-9;
  const Equilibrium a = solve(c, Scheme::no_bias(), loose);
  const Equilibrium b = solve(c, Scheme::no_bias(), tight);
  EXPECT_LT(b.residual, 1e-9);
  EXPECT_LT(b.residual, a.residual);
  EXPECT_GE(b.iterations, a.iterations);
}

TEST(Solve, IterationBudgetExhausted) {
  SolverOptions o;
  o.max_iter = 1;
  o.average_oscillation = false;
  try {
    solve(NetworkConfig::defaults(), Scheme::no_bias(), o);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_EQ(e.residual_trace().size(), 1u);
    EXPECT_EQ(e.last().eh.size(), NetworkConfig::defaults().battery_eh.capacity_units + 1);
  }
}

TEST(Solve, RejectsBadDamping) {
  SolverOptions o;
  o.damping = 1.0;
  EXPECT_THROW(solve(NetworkConfig::defaults(), Scheme::no_bias(), o), std::invalid_argument);
}

TEST(Solve, BestIsDegenerate) {
  const Equilibrium eq = solve(NetworkConfig::defaults(), Scheme::best());
  EXPECT_TRUE(eq.degenerate);
  EXPECT_EQ(eq.iterations, 0);
  EXPECT_EQ(eq.v.hy(eq.v.hy.size() - 1), 1.0);
}

TEST(Metrics, FullBatteriesCoveringEveryDemandDrawNoHybridGrid) {
  NetworkConfig c = NetworkConfig::defaults();
  // A full battery whose coverage exceeds P_max serves every HY user renewably.
  c.battery_hy.unit_mw = 1.01 * Radio(c).availability_load(c.p_tx_max_mw) / c.battery_hy.capacity_units;
  const MetricsReport r = analyze(c, Scheme::best());
  EXPECT_EQ(r.grid_power_hy_mw_per_m2, 0.0);
}

TEST(Metrics, OnGridOnlyNetwork) {
  NetworkConfig c = NetworkConfig::defaults();
  c.lambda_eh = c.lambda_hy = 0.0;
  c.lambda_og = density_from_spacing(120.0);
  const Equilibrium eq = solve(c, Scheme::no_bias());
  const MetricsReport r = metrics(eq, c);
  ASSERT_TRUE(r.outage_prob);
  EXPECT_NEAR(*r.outage_prob, std::exp(-density_bs(c.p_tx_max_mw, BsType::OG, c)), 1e-15);
  EXPECT_EQ(r.grid_power_hy_mw_per_m2, 0.0);
  EXPECT_GT(r.grid_power_og_mw_per_m2, 0.0);
  EXPECT_NEAR(r.grid_power_total_mw, r.grid_power_og_mw_per_m2 * c.sim_area_m2, 1e-9);
}

TEST(Metrics, OutageLossAtLowBias) {
  const NetworkConfig c = NetworkConfig::defaults();
  const MetricsReport low = analyze(c, Scheme::adaptive(0.5, 1.0));
  const MetricsReport best = analyze(c, Scheme::best());
  const auto loss = outage_loss(low, best);
  ASSERT_TRUE(loss);
  EXPECT_GT(*loss, 0.0);
}
