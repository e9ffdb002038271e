#include <gtest/gtest.h>

#include <cmath>

#include "greenassoc/analysis.hpp"
#include "greenassoc/radio.hpp"

using namespace greenassoc;

namespace {

NetworkConfig with_og() {
  NetworkConfig c = NetworkConfig::defaults();
  c.lambda_og = density_from_spacing(250.0);
  return c;
}

double bisect_coverage(double load, const Radio& radio) {
  double lo = 0.0, hi = load;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (radio.availability_load(mid) < load ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST(PowerCoverage, EmptyState) { EXPECT_EQ(power_coverage(0, BsType::EH, NetworkConfig::defaults()), 0.0); }

TEST(PowerCoverage, NoUsersMeansFullBudget) {
  NetworkConfig c = NetworkConfig::defaults();
  c.omega = 0.0;
  for (int l : {1, 7, 1000}) EXPECT_DOUBLE_EQ(power_coverage(l, BsType::HY, c), l * c.battery_hy.unit_mw);
}

TEST(PowerCoverage, FullBatteryRoot) {
  const NetworkConfig c = NetworkConfig::defaults();
  const Radio radio(c);
  const double v = power_coverage(1000, BsType::EH, c);
  EXPECT_NEAR(radio.availability_load(v), 750.0, 1e-10 * 750.0);
  EXPECT_NEAR(v, bisect_coverage(750.0, radio), 1e-10 * v);
}

TEST(PowerCoverage, TableIsIncreasing) {
  const CoverageTable t = coverage_table(BsType::HY, NetworkConfig::defaults());
  for (int l = 1; l <= t.capacity(); ++l) EXPECT_GT(t.p_cov[l], t.p_cov[l - 1]);
  EXPECT_EQ(t.lowest_available_state(0.0), 0);
  EXPECT_EQ(t.lowest_available_state(t.p_cov[5]), 5);
  EXPECT_EQ(t.lowest_available_state(t.p_cov[5] * (1 + 1e-12)), 6);
  EXPECT_EQ(t.lowest_available_state(1e9), t.capacity() + 1);
}

TEST(DensityBs, ZeroAndLinearity) {
  NetworkConfig c = NetworkConfig::defaults();
  EXPECT_EQ(density_bs(0.0, BsType::EH, c), 0.0);
  const double base = density_bs(100.0, BsType::EH, c);
  c.lambda_eh *= 2.0;
  EXPECT_NEAR(density_bs(100.0, BsType::EH, c), 2.0 * base, 1e-15);
  EXPECT_NEAR(base, NetworkConfig::defaults().lambda_eh * upsilon(c) * std::sqrt(100.0), 1e-15);
}

TEST(DensityAvailable, FullAndEmptyLimits) {
  const NetworkConfig c = NetworkConfig::defaults();
  const int L = c.battery_eh.capacity_units;
  const double cov_l = power_coverage(L, BsType::EH, c);
  const auto full = point_mass(L, L);
  const auto empty = point_mass(L, 0);
  for (double p : {0.1, 10.0, cov_l}) {
    EXPECT_NEAR(density_available(p, BsType::EH, full, c), density_bs(p, BsType::EH, c), 1e-14);
    EXPECT_EQ(density_available(p, BsType::EH, empty, c), 0.0);
  }
  EXPECT_NEAR(density_available(10 * cov_l, BsType::EH, full, c), density_bs(cov_l, BsType::EH, c), 1e-14);
}

TEST(DensityGrid, RolesByType) {
  const NetworkConfig c = with_og();
  const auto v = BatteryVectors::uniform(c);
  const auto full = BatteryVectors::full(c);
  const double cov_l = power_coverage(c.battery_hy.capacity_units, BsType::HY, c);
  for (double p : {1.0, 100.0, c.p_tx_max_mw}) {
    EXPECT_EQ(density_grid(p, BsType::EH, v.eh, c), 0.0);
    EXPECT_NEAR(density_grid(p, BsType::OG, v.eh, c), density_bs(p, BsType::OG, c), 1e-15);
  }
  for (double p : {0.5, 5.0, cov_l}) EXPECT_NEAR(density_grid(p, BsType::HY, full.hy, c), 0.0, 1e-15);
  // Frozen beyond P_max.
  EXPECT_EQ(density_grid(2 * c.p_tx_max_mw, BsType::OG, v.eh, c), density_grid(c.p_tx_max_mw, BsType::OG, v.eh, c));
}

TEST(DensityScaled, UnitBiasAndLargeBias) {
  const NetworkConfig c = NetworkConfig::defaults();
  const auto v = BatteryVectors::uniform(c);
  for (double t : {0.5, 20.0, 300.0})
    EXPECT_DOUBLE_EQ(density_scaled_available(t, BsType::HY, v.hy, 1.7, 1.7, c),
                     density_available(t, BsType::HY, v.hy, c));

  // Large beta_a shrinks the argument t beta_g / beta_a to 0. The frozen value
  // sum_l v_l Lambda(p_cov_l) is reached from the other side, beta_g / beta_a -> inf.
  EXPECT_NEAR(density_scaled_available(10.0, BsType::HY, v.hy, 1e12, 1.0, c), 0.0, 1e-6);
  const CoverageTable t = coverage_table(BsType::HY, c);
  double frozen = 0.0;
  for (int l = 0; l <= t.capacity(); ++l) frozen += v.hy(l) * density_bs(t.p_cov[l], BsType::HY, c);
  EXPECT_NEAR(density_scaled_available(10.0, BsType::HY, v.hy, 1.0, 1e12, c), frozen, 1e-12);
}

TEST(AssocProb, ZeroDemandAlwaysWins) {
  const NetworkConfig c = with_og();
  const auto v = BatteryVectors::uniform(c);
  for (auto scheme : {Scheme::no_bias(), Scheme::adaptive(3.0, 1.0), Scheme::fixed(2.0, 1.0, 1.0)})
    for (int l : {1, 500, 1000}) {
      EXPECT_DOUBLE_EQ(assoc_prob(0.0, BsType::EH, Supply::Renewable, l, v, c, scheme), 1.0);
      EXPECT_DOUBLE_EQ(assoc_prob(0.0, BsType::HY, Supply::Renewable, l, v, c, scheme), 1.0);
    }
}

TEST(AssocProb, HarvesterNeverGrid) {
  const NetworkConfig c = with_og();
  const auto v = BatteryVectors::uniform(c);
  for (double p : {0.0, 1.0, 100.0})
    EXPECT_EQ(assoc_prob(p, BsType::EH, Supply::Grid, 300, v, c, Scheme::adaptive(2.0, 1.0)), 0.0);
}

TEST(AssocProb, DecreasesWithDemand) {
  const NetworkConfig c = with_og();
  const Landscape land(c, Scheme::adaptive(2.0, 1.0), BatteryVectors::uniform(c));
  double last = 1.0;
  for (double p = 0.0; p <= 30.0; p += 1.5) {
    const double a = land.assoc_prob(p, BsType::HY, Supply::Renewable, 1000);
    EXPECT_LE(a, last + 1e-15);
    last = a;
  }
}

TEST(ServedDensity, EmptyStateAndGridCutoff) {
  const NetworkConfig c = with_og();
  const auto v = BatteryVectors::uniform(c);
  const Scheme s = Scheme::adaptive(2.0, 1.0);
  for (double p : {1.0, 50.0, 700.0}) EXPECT_EQ(served_density(p, BsType::EH, Supply::Renewable, 0, v, c, s), 0.0);
  const double at_max = served_density(c.p_tx_max_mw, BsType::HY, Supply::Grid, 10, v, c, s);
  EXPECT_GT(at_max, 0.0);
  EXPECT_DOUBLE_EQ(served_density(3 * c.p_tx_max_mw, BsType::HY, Supply::Grid, 10, v, c, s), at_max);
}

TEST(Outage, OnlyGridCapableBs) {
  NetworkConfig c = with_og();
  c.lambda_eh = 0.0;
  const auto v = BatteryVectors::uniform(c);
  const double expected =
      std::exp(-density_bs(c.p_tx_max_mw, BsType::HY, c) - density_bs(c.p_tx_max_mw, BsType::OG, c));
  EXPECT_NEAR(outage_probability(v, c), expected, 1e-15);
}

TEST(Outage, EmptyNetwork) {
  NetworkConfig c = NetworkConfig::defaults();
  c.lambda_eh = c.lambda_hy = c.lambda_og = 0.0;
  EXPECT_EQ(outage_probability(BatteryVectors::uniform(c), c), 1.0);
}

TEST(GridPower, ComponentsVanish) {
  NetworkConfig c = NetworkConfig::defaults();
  const int L = c.battery_hy.capacity_units;
  StateDemand hy;
  hy.grid_mw.assign(L + 1, 5.0);
  hy.grid_mw[L] = 0.0;
  BatteryVectors v = BatteryVectors::full(c);
  const GridPower g = grid_power(v, hy, 123.0, c);
  EXPECT_EQ(g.og_mw_per_m2, 0.0);
  EXPECT_EQ(g.hy_mw_per_m2, 0.0);
  v.hy = point_mass(L, 0);
  EXPECT_NEAR(grid_power(v, hy, 0.0, c).hy_mw_per_m2, c.lambda_hy * 5.0, 1e-18);
}

TEST(Landscape, DemandRowsAreDistributions) {
  const NetworkConfig c = with_og();
  for (auto scheme : {Scheme::adaptive(2.0, 1.0), Scheme::fixed(2.0, 1.0, 1.0), Scheme::best()}) {
    const Landscape land(c, scheme, BatteryVectors::uniform(c));
    for (BsType t : {BsType::EH, BsType::HY}) {
      const StateDemand d = land.demand(t);
      ASSERT_EQ(d.battery_rows.size(), static_cast<std::size_t>(c.battery(t).capacity_units + 1));
      for (std::size_t l = 0; l < d.battery_rows.size(); l += 37) {
        double s = 0.0;
        for (double x : d.battery_rows[l]) {
          EXPECT_GE(x, 0.0);
          s += x;
        }
        EXPECT_NEAR(s, 1.0, 1e-12);
        EXPECT_LE(d.battery_rows[l].size(), l + 1);
      }
      if (t == BsType::EH)
        for (double g : d.grid_mw) EXPECT_EQ(g, 0.0);
    }
    EXPECT_GE(land.og_grid_mw(), 0.0);
  }
}
