#include <gtest/gtest.h>

#include <vector>

#include "greenassoc/association.hpp"
#include "greenassoc/radio.hpp"

using namespace greenassoc;

namespace {

CandidateBs candidate(int id, BsType type, double p, SetTag tag) {
  CandidateBs c;
  c.bs_id = id;
  c.type = type;
  c.required_power_mw = p;
  c.tag = tag;
  return c;
}

AssociationOutcome renewable_user(int id, double p, BsType type) {
  AssociationOutcome o;
  o.user_id = id;
  o.chosen_bs = 0;
  o.chosen_type = type;
  o.supply = Supply::Renewable;
  o.required_power_mw = p;
  return o;
}

}  // namespace

TEST(Partition, OnGridWithinBudgetIsGrid) {
  const NetworkConfig c = NetworkConfig::defaults();
  const std::vector<BsLink> links = {{0, BsType::OG, 0, 1.0}, {1, BsType::OG, 0, c.p_tx_max_mw},
                                     {2, BsType::OG, 0, c.p_tx_max_mw * 1.01}};
  const auto out = partition(links, c);
  EXPECT_EQ(out[0].tag, SetTag::Grid);
  EXPECT_EQ(out[1].tag, SetTag::Grid);
  EXPECT_EQ(out[2].tag, SetTag::Excluded);
}

TEST(Partition, EmptyHarvesterIsExcluded) {
  const NetworkConfig c = NetworkConfig::defaults();
  const std::vector<BsLink> links = {{0, BsType::EH, 0, 1e-3}};
  EXPECT_EQ(partition(links, c)[0].tag, SetTag::Excluded);
}

TEST(Partition, AvailabilityBoundaryIsInclusive) {
  NetworkConfig c = NetworkConfig::defaults();
  c.omega = 0.0;
  c.battery_hy.unit_mw = 0.75;
  std::vector<BsLink> links = {{0, BsType::HY, 4, 3.0}};
  EXPECT_EQ(partition(links, c)[0].tag, SetTag::Available);
  links[0].required_power_mw = 3.0000001;
  EXPECT_EQ(partition(links, c)[0].tag, SetTag::Grid);

  // With the estimate term: a one-unit battery equal to g(p).
  c = NetworkConfig::defaults();
  const double p = 2.0;
  c.battery_hy.unit_mw = Radio(c).availability_load(p);
  links = {{0, BsType::HY, 1, p}};
  EXPECT_EQ(partition(links, c)[0].tag, SetTag::Available);
}

TEST(Partition, AssumeFullUsesCapacity) {
  const NetworkConfig c = NetworkConfig::defaults();
  const std::vector<BsLink> links = {{0, BsType::EH, 0, 5.0}};
  EXPECT_EQ(partition(links, c, false)[0].tag, SetTag::Excluded);
  EXPECT_EQ(partition(links, c, true)[0].tag, SetTag::Available);
}

TEST(Partition, TagsRespectTypeRoles) {
  const NetworkConfig c = NetworkConfig::defaults();
  for (int l : {0, 1, 10, 1000})
    for (double p : {1e-4, 0.5, 30.0, 400.0, 900.0}) {
      const std::vector<BsLink> links = {{0, BsType::EH, l, p}, {1, BsType::OG, 0, p}};
      const auto out = partition(links, c);
      EXPECT_NE(out[0].tag, SetTag::Grid);
      EXPECT_NE(out[1].tag, SetTag::Available);
    }
}

TEST(Choose, AdaptiveBiasFavoursGridWhenRenewableWeighted) {
  const std::vector<CandidateBs> cands = {candidate(0, BsType::HY, 3.0, SetTag::Available),
                                          candidate(1, BsType::OG, 5.0, SetTag::Grid)};
  const auto a = choose(cands, Scheme::adaptive(2.0, 1.0));
  ASSERT_TRUE(a.chosen_bs);
  EXPECT_EQ(*a.chosen_bs, 1);
  EXPECT_EQ(a.supply, Supply::Grid);
  const auto b = choose(cands, Scheme::adaptive(1.0, 1.0));
  EXPECT_EQ(*b.chosen_bs, 0);
  EXPECT_EQ(b.supply, Supply::Renewable);
}

TEST(Choose, NoCandidateIsOutage) {
  const auto o = choose({}, Scheme::no_bias(), 7);
  EXPECT_FALSE(o.chosen_bs);
  EXPECT_EQ(o.supply, Supply::Outage);
  EXPECT_EQ(o.user_id, 7);
  const std::vector<CandidateBs> excluded = {candidate(0, BsType::EH, 1.0, SetTag::Excluded)};
  EXPECT_EQ(choose(excluded, Scheme::no_bias()).supply, Supply::Outage);
}

TEST(Choose, TiesPreferRenewableThenLowestId) {
  const std::vector<CandidateBs> cands = {candidate(5, BsType::OG, 2.0, SetTag::Grid),
                                          candidate(9, BsType::EH, 2.0, SetTag::Available),
                                          candidate(3, BsType::EH, 2.0, SetTag::Available)};
  const auto o = choose(cands, Scheme::no_bias());
  EXPECT_EQ(*o.chosen_bs, 3);
  EXPECT_EQ(o.supply, Supply::Renewable);
}

TEST(Choose, FixedBiasWeighsByType) {
  const std::vector<CandidateBs> cands = {candidate(0, BsType::EH, 4.0, SetTag::Available),
                                          candidate(1, BsType::OG, 3.0, SetTag::Grid)};
  EXPECT_EQ(*choose(cands, Scheme::no_bias()).chosen_bs, 1);
  EXPECT_EQ(*choose(cands, Scheme::fixed(0.5, 1.0, 1.0)).chosen_bs, 0);
}

TEST(SelectUsers, HarvesterDropsWhatDoesNotFit) {
  const NetworkConfig c = NetworkConfig::defaults();  // 0.75 mW units
  const std::vector<AssociationOutcome> users = {renewable_user(1, 1.2, BsType::EH), renewable_user(0, 0.5, BsType::EH)};
  const Selection s = select_users(BsType::EH, users, 2, c, HyService::AnnouncedSupply);
  ASSERT_EQ(s.served.size(), 1u);
  EXPECT_EQ(s.served[0].user_id, 0);
  EXPECT_EQ(s.served[0].units, 1);
  EXPECT_EQ(s.dropped, std::vector<int>{1});
  EXPECT_EQ(s.battery_units_drawn, 1);
  EXPECT_EQ(s.grid_mw, 0.0);
}

TEST(SelectUsers, HybridMovesOverflowToGrid) {
  const NetworkConfig c = NetworkConfig::defaults();
  const std::vector<AssociationOutcome> users = {renewable_user(0, 0.5, BsType::HY), renewable_user(1, 1.2, BsType::HY)};
  const Selection s = select_users(BsType::HY, users, 2, c, HyService::AnnouncedSupply);
  ASSERT_EQ(s.served.size(), 2u);
  EXPECT_EQ(s.served_renewable, 1);
  EXPECT_EQ(s.served_grid, 1);
  EXPECT_EQ(s.battery_units_drawn, 1);
  EXPECT_DOUBLE_EQ(s.grid_mw, 1.2);
  EXPECT_TRUE(s.dropped.empty());
}

TEST(SelectUsers, EmptyListDrawsNothing) {
  const Selection s = select_users(BsType::HY, {}, 10, NetworkConfig::defaults(), HyService::BatteryFirst);
  EXPECT_TRUE(s.served.empty());
  EXPECT_EQ(s.battery_units_drawn, 0);
  EXPECT_EQ(s.grid_mw, 0.0);
}

TEST(SelectUsers, UnitsRoundUp) {
  EXPECT_EQ(units_for(0.75, 0.75), 1);
  EXPECT_EQ(units_for(0.7500001, 0.75), 2);
  EXPECT_EQ(units_for(0.1, 0.75), 1);
}

TEST(Scheme, NamesRoundTrip) {
  for (auto k : {Scheme::Kind::AdaptiveBias, Scheme::Kind::FixedBias, Scheme::Kind::NoBias, Scheme::Kind::BestCA})
    EXPECT_EQ(Scheme::parse_kind(Scheme::name(k)), k);
  EXPECT_FALSE(Scheme::parse_kind("bogus"));
  EXPECT_TRUE(Scheme::best().assumes_full_batteries());
}
