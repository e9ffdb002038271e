#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "greenassoc/association.hpp"
#include "greenassoc/config.hpp"
#include "greenassoc/metrics.hpp"
#include "greenassoc/radio.hpp"

namespace greenassoc {

using SimRng = std::mt19937_64;

struct SimBs {
  int id = 0;
  BsType type = BsType::EH;
  double x = 0.0;
  double y = 0.0;
  /// Units at the start of the current slot; 0 for OG.
  int battery_units = 0;
};

struct SimUser {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
};

/// BSs and the current slot's users on a square torus.
struct Realization {
  double side_m = 0.0;
  std::vector<SimBs> bs;
  std::vector<SimUser> users;

  double area_m2() const { return side_m * side_m; }
  int count(BsType type) const;
  /// Squared wrap-around distance.
  double distance2(double x0, double y0, double x1, double y1) const;
};

/// Poisson BS counts per type, uniform positions, full batteries, no users yet.
Realization sample_realization(const NetworkConfig& config, SimRng& rng);

/// Tallies of one slot.
struct SlotLedger {
  int users = 0;
  int served_renewable = 0;
  int served_grid = 0;
  int dropped = 0;
  int outage = 0;
  long battery_units_consumed = 0;
  double grid_mw_hy = 0.0;
  double grid_mw_og = 0.0;
  long harvest_units = 0;

  double grid_mw() const { return grid_mw_hy + grid_mw_og; }
  bool conserves_users() const { return served_renewable + served_grid + dropped + outage == users; }
};

/// Runs slots of one scheme on a realization.
///
/// A slot draws fresh users, samples every user-BS shadowing, associates every
/// user against the start-of-slot battery levels, serves each BS's users, then
/// applies l' = min(L, l - drawn + harvested).
class SlotSimulator {
 public:
  SlotSimulator(const NetworkConfig& config, const Scheme& scheme);

  SlotLedger run_slot(Realization& realization, SimRng& rng) const;

  /// Settles a slot whose links and harvests are given: links[u] are user u's
  /// candidate BSs, harvest[b] the units BS b receives.
  SlotLedger run_slot(Realization& realization, std::span<const std::vector<BsLink>> links,
                      std::span<const long> harvest) const;

  /// Demands above this can neither be served nor influence association.
  double candidate_cap_mw() const { return cap_mw_; }

 private:
  void sample_links(const Realization& realization, const SimUser& user, SimRng& rng,
                    std::vector<BsLink>& out) const;
  /// Upper bound on P(p <= cap) over bin k of squared distance.
  double reach_bound(double d2) const;

  NetworkConfig config_;
  Scheme scheme_;
  Radio radio_;
  double cap_mw_ = 0.0;
  double bin_width_d2_ = 0.0;
  std::vector<double> reach_;
};

/// Outcome totals of one replication's measured slots.
struct ReplicationTally {
  long users = 0;
  long outage = 0;
  long dropped = 0;
  long served_renewable = 0;
  long served_grid = 0;
  double grid_mw_hy = 0.0;
  double grid_mw_og = 0.0;
  int slots = 0;

  std::optional<double> outage_prob() const;
  double mean_grid_mw() const { return slots > 0 ? (grid_mw_hy + grid_mw_og) / slots : 0.0; }
};

/// One replication: fresh realization, warm-up slots, then measured slots.
/// Its random stream depends only on (config.seed, replication).
ReplicationTally run_replication(const NetworkConfig& config, const Scheme& scheme, int replication);

struct SimulationOptions {
  /// Worker threads for replications; 0 uses the hardware concurrency.
  int threads = 0;
};

/// Pooled outage, mean grid power per slot and 95% half-widths from the spread
/// of replication values. Results do not depend on the thread count.
MetricsReport estimate(const NetworkConfig& config, const Scheme& scheme, const SimulationOptions& options = {});

/// 95% half-width t * sd / sqrt(n) of replication values; 0 for fewer than two.
double confidence_half_width(std::span<const double> values);

}  // namespace greenassoc
