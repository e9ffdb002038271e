#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "greenassoc/radio.hpp"
#include "greenassoc/simulator.hpp"

using namespace greenassoc;

namespace {

NetworkConfig small_config() {
  NetworkConfig c = NetworkConfig::defaults();
  c.sim_area_m2 = 250000.0;
  c.replications = 4;
  c.slots = 60;
  c.warmup_slots = 20;
  return c;
}

bool same(const MetricsReport& a, const MetricsReport& b) {
  return a.outage_prob == b.outage_prob && a.outage_ci == b.outage_ci && a.grid_power_total_mw == b.grid_power_total_mw &&
         a.grid_power_ci == b.grid_power_ci && a.grid_power_hy_mw_per_m2 == b.grid_power_hy_mw_per_m2 &&
         a.grid_power_og_mw_per_m2 == b.grid_power_og_mw_per_m2;
}

}  // namespace

TEST(SampleRealization, AbsentTypeHasNoStations) {
  const NetworkConfig c = NetworkConfig::defaults();
  SimRng rng(1);
  const Realization r = sample_realization(c, rng);
  EXPECT_EQ(r.count(BsType::OG), 0);
  EXPECT_NEAR(r.area_m2(), c.sim_area_m2, 1e-6);
  for (std::size_t i = 0; i < r.bs.size(); ++i) {
    EXPECT_EQ(r.bs[i].id, static_cast<int>(i));
    if (has_battery(r.bs[i].type)) {
      EXPECT_EQ(r.bs[i].battery_units, c.battery(r.bs[i].type).capacity_units);
    }
  }
}

TEST(SampleRealization, PoissonMeanCount) {
  NetworkConfig c = NetworkConfig::defaults();
  set_harvesting_layout(c, 80.0, 0.0);
  const double mean = c.lambda_eh * c.sim_area_m2;
  EXPECT_NEAR(mean, 49.7, 0.05);
  SimRng rng(9);
  const int n = 1000;
  double total = 0.0;
  for (int i = 0; i < n; ++i) total += sample_realization(c, rng).count(BsType::EH);
  EXPECT_NEAR(total / n, mean, 3.0 * std::sqrt(mean / n));
}

TEST(SampleRealization, SeedDeterminism) {
  const NetworkConfig c = NetworkConfig::defaults();
  SimRng a(42), b(42);
  const Realization x = sample_realization(c, a);
  const Realization y = sample_realization(c, b);
  ASSERT_EQ(x.bs.size(), y.bs.size());
  for (std::size_t i = 0; i < x.bs.size(); ++i) {
    EXPECT_EQ(x.bs[i].x, y.bs[i].x);
    EXPECT_EQ(x.bs[i].y, y.bs[i].y);
    EXPECT_EQ(x.bs[i].type, y.bs[i].type);
  }
}

TEST(RunSlot, NoUsersOnlyHarvest) {
  NetworkConfig c = small_config();
  c.omega = 0.0;
  SimRng rng(3);
  Realization r = sample_realization(c, rng);
  for (SimBs& b : r.bs) b.battery_units = has_battery(b.type) ? 990 : 0;
  const std::vector<SimBs> before = r.bs;
  const SlotLedger ledger = SlotSimulator(c, Scheme::no_bias()).run_slot(r, rng);
  EXPECT_EQ(ledger.users, 0);
  EXPECT_EQ(ledger.battery_units_consumed, 0);
  EXPECT_EQ(ledger.grid_mw(), 0.0);
  for (std::size_t i = 0; i < r.bs.size(); ++i) {
    if (!has_battery(r.bs[i].type)) continue;
    EXPECT_GE(r.bs[i].battery_units, before[i].battery_units);
    EXPECT_LE(r.bs[i].battery_units, c.battery(r.bs[i].type).capacity_units);
    const int gained = r.bs[i].battery_units - before[i].battery_units;
    const int cap = c.battery(r.bs[i].type).capacity_units;
    EXPECT_TRUE(gained % c.harvest(r.bs[i].type).burst_units == 0 || r.bs[i].battery_units == cap);
  }
}

TEST(RunSlot, BestKeepsBatteriesFull) {
  const NetworkConfig c = small_config();
  SimRng rng(4);
  Realization r = sample_realization(c, rng);
  const SlotSimulator sim(c, Scheme::best());
  for (int s = 0; s < 5; ++s) {
    const SlotLedger ledger = sim.run_slot(r, rng);
    EXPECT_GT(ledger.users, 0);
    for (const SimBs& b : r.bs)
      if (has_battery(b.type)) EXPECT_EQ(b.battery_units, c.battery(b.type).capacity_units);
  }
}

TEST(RunSlot, SingleUserSingleHarvester) {
  const NetworkConfig c = NetworkConfig::defaults();
  const double p = 10.0;  // costs ceil(10 / 0.75) = 14 units
  const int level = static_cast<int>(std::ceil(Radio(c).availability_load(p) / c.battery_eh.unit_mw));
  Realization r;
  r.side_m = 1000.0;
  r.bs = {{0, BsType::EH, 0.0, 0.0, level}};
  r.users = {{0, 1.0, 1.0}};
  const std::vector<std::vector<BsLink>> links = {{{0, BsType::EH, level, p}}};
  const std::vector<long> harvest = {0};
  const SlotLedger ledger = SlotSimulator(c, Scheme::no_bias()).run_slot(r, links, harvest);
  EXPECT_EQ(ledger.served_renewable, 1);
  EXPECT_EQ(ledger.battery_units_consumed, 14);
  EXPECT_EQ(r.bs[0].battery_units, level - 14);
  EXPECT_TRUE(ledger.conserves_users());

  // One unit short of the availability load: nothing to serve it.
  r.bs[0].battery_units = level - 1;
  const std::vector<std::vector<BsLink>> short_links = {{{0, BsType::EH, level - 1, p}}};
  EXPECT_EQ(SlotSimulator(c, Scheme::no_bias()).run_slot(r, short_links, harvest).outage, 1);
}

TEST(RunSlot, CandidateCap) {
  const NetworkConfig c = NetworkConfig::defaults();
  const SlotSimulator sim(c, Scheme::no_bias());
  EXPECT_GE(sim.candidate_cap_mw(), c.p_tx_max_mw);
}

TEST(Estimate, NoUsersLeavesOutageUndefined) {
  NetworkConfig c = small_config();
  c.omega = 0.0;
  const MetricsReport r = estimate(c, Scheme::no_bias());
  EXPECT_FALSE(r.outage_prob);
  EXPECT_EQ(r.grid_power_total_mw, 0.0);
}

TEST(Estimate, AbundantHarvestMatchesBest) {
  NetworkConfig c = small_config();
  c.harvest_eh = {100000.0, 1000};
  c.harvest_hy = {100000.0, 1000};
  const MetricsReport pinned = estimate(c, Scheme::no_bias());
  const MetricsReport best = estimate(c, Scheme::best());
  ASSERT_TRUE(pinned.outage_prob && best.outage_prob);
  EXPECT_NEAR(*pinned.outage_prob, *best.outage_prob, pinned.outage_ci + best.outage_ci + 1e-12);
  EXPECT_NEAR(pinned.grid_power_total_mw, best.grid_power_total_mw, pinned.grid_power_ci + best.grid_power_ci + 1e-9);
}

TEST(Estimate, ThreadCountDoesNotMatter) {
  const NetworkConfig c = small_config();
  SimulationOptions one, three;
  one.threads = 1;
  three.threads = 3;
  EXPECT_TRUE(same(estimate(c, Scheme::adaptive(2.0, 1.0), one), estimate(c, Scheme::adaptive(2.0, 1.0), three)));
}

TEST(Estimate, ReplicationStreamsDiffer) {
  const NetworkConfig c = small_config();
  const ReplicationTally a = run_replication(c, Scheme::no_bias(), 0);
  const ReplicationTally b = run_replication(c, Scheme::no_bias(), 1);
  EXPECT_NE(a.users, b.users);
  const ReplicationTally a2 = run_replication(c, Scheme::no_bias(), 0);
  EXPECT_EQ(a.users, a2.users);
  EXPECT_EQ(a.grid_mw_hy, a2.grid_mw_hy);
}

TEST(ConfidenceHalfWidth, StudentT) {
  const std::vector<double> v = {1.0, 2.0, 3.0};
  EXPECT_NEAR(confidence_half_width(v), 4.302652729696 / std::sqrt(3.0), 1e-9);
  const std::vector<double> one = {5.0};
  EXPECT_EQ(confidence_half_width(one), 0.0);
}
