#pragma once

#include <array>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "greenassoc/association.hpp"
#include "greenassoc/battery_chain.hpp"
#include "greenassoc/config.hpp"
#include "greenassoc/metrics.hpp"
#include "greenassoc/power_density.hpp"
#include "greenassoc/radio.hpp"

namespace greenassoc {

/// Power coverage of every battery state of one BS type.
struct CoverageTable {
  /// p_cov[l], l = 0..L; p_cov[0] = 0 and strictly increasing.
  std::vector<double> p_cov;

  int capacity() const { return static_cast<int>(p_cov.size()) - 1; }
  /// Lowest state whose coverage reaches p (p_cov[l-1] < p <= p_cov[l]); capacity()+1 if none.
  int lowest_available_state(double p) const;
  /// Same for a demand compared after bias scaling, i.e. at t * beta_g / beta_a.
  int lowest_available_state(double t, double beta_a, double beta_g) const {
    return lowest_available_state(t * beta_g / beta_a);
  }
};

/// Largest demand a battery at state l accepts: the root of availability_load(p) = l * epsilon.
double power_coverage(int l, BsType type, const NetworkConfig& config);
CoverageTable coverage_table(BsType type, const NetworkConfig& config);

/// Stationary battery distributions of both harvesting types.
struct BatteryVectors {
  Eigen::RowVectorXd eh;
  Eigen::RowVectorXd hy;

  static BatteryVectors uniform(const NetworkConfig& config);
  static BatteryVectors full(const NetworkConfig& config);
  static BatteryVectors empty(const NetworkConfig& config);

  const Eigen::RowVectorXd& of(BsType type) const { return type == BsType::EH ? eh : hy; }
  Eigen::RowVectorXd& of(BsType type) { return type == BsType::EH ? eh : hy; }
};

/// A point mass at `state` over 0..capacity.
Eigen::RowVectorXd point_mass(int capacity, int state);

/// Per-state demand a tagged BS sees in one slot.
struct StateDemand {
  /// P_T(m | l), battery units drawn.
  ConsumptionTable battery_rows;
  /// Mean grid power drawn at state l, mW.
  std::vector<double> grid_mw;
};

struct GridPower {
  double og_mw_per_m2 = 0.0;
  double hy_mw_per_m2 = 0.0;
  double total_mw_per_m2() const { return og_mw_per_m2 + hy_mw_per_m2; }
};

/// Every power-domain density a typical user sees, for one scheme and one pair
/// of battery distributions.
///
/// Candidate BSs split into streams (EH available, HY available, HY grid, OG
/// grid for supply-weighted schemes; EH available, HY any, OG grid for the
/// tier-weighted ones). A stream's points are weighed by its bias, and a tagged
/// BS wins a user of demand t when no other stream holds a point of biased
/// power below its own biased power.
class Landscape {
 public:
  Landscape(const NetworkConfig& config, const Scheme& scheme, const BatteryVectors& batteries);

  const NetworkConfig& config() const { return config_; }
  const Scheme& scheme() const { return scheme_; }
  const CoverageTable& coverage(BsType type) const;
  const BatteryVectors& batteries() const { return batteries_; }

  /// Lambda_X: all X BSs by required power.
  const PowerLawDensity& bs(BsType type) const;
  /// Lambda_X^(A); zero for OG.
  const PowerLawDensity& available(BsType type) const;
  /// Lambda_X^(G); zero for EH, frozen beyond P_max.
  const PowerLawDensity& grid(BsType type) const;

  /// Probability a tagged X BS at state l wins a user of demand p under `supply`.
  double assoc_prob(double p, BsType type, Supply supply, int l) const;
  /// Cumulative intensity of users with demand <= p associating a tagged X BS at
  /// state l under `supply`. Tier-weighted schemes tag every HY user Renewable.
  double served(double p, BsType type, Supply supply, int l) const;
  /// Power-weighted (mW) version of `served`.
  double served_power(double p, BsType type, Supply supply, int l) const;

  /// Verbatim network outage: no available EH, no HY or OG within P_max.
  double outage_probability() const;

  /// Battery rows and grid means of a harvesting type.
  StateDemand demand(BsType type) const;
  /// Mean grid power of one OG BS, mW.
  double og_grid_mw() const;

 private:
  struct Stream {
    BsType type;
    Supply supply;
    double weight;
    PowerLawDensity density;
  };
  const Stream* find_stream(BsType type, Supply supply) const;
  const VoidWeightedIntensity* intensity(BsType type, Supply supply) const;
  /// Upper demand limit a tagged BS at state l offers to `supply`.
  std::pair<double, double> window(BsType type, Supply supply, int l) const;

  NetworkConfig config_;
  Scheme scheme_;
  Radio radio_;
  BatteryVectors batteries_;
  std::array<CoverageTable, 2> coverage_;
  std::array<PowerLawDensity, 3> bs_;
  std::array<PowerLawDensity, 3> available_;
  std::array<PowerLawDensity, 3> grid_;
  std::vector<Stream> streams_;
  std::vector<VoidWeightedIntensity> served_;
};

// Point evaluations. Each builds what it needs from scratch; use Landscape for repeated calls.

double density_bs(double p, BsType type, const NetworkConfig& config);
double density_available(double p, BsType type, const Eigen::RowVectorXd& v, const NetworkConfig& config);
double density_grid(double p, BsType type, const Eigen::RowVectorXd& v, const NetworkConfig& config);
/// Available X BSs seen by a grid comparison at demand t: Lambda_X^(A)(t * beta_g / beta_a).
double density_scaled_available(double t, BsType type, const Eigen::RowVectorXd& v, double beta_a, double beta_g,
                                const NetworkConfig& config);
/// Mirrored term: grid X BSs seen by a renewable comparison, Lambda_X^(G)(p * beta_a / beta_g).
double density_scaled_grid(double p, BsType type, const Eigen::RowVectorXd& v, double beta_a, double beta_g,
                           const NetworkConfig& config);

double assoc_prob(double p, BsType type, Supply supply, int l, const BatteryVectors& v, const NetworkConfig& config,
                  const Scheme& scheme);
double served_density(double p, BsType type, Supply supply, int l, const BatteryVectors& v,
                      const NetworkConfig& config, const Scheme& scheme);
double outage_probability(const BatteryVectors& v, const NetworkConfig& config);

/// Grid power per m2: lambda_OG * og_mw and lambda_HY * sum_l v_l hy.grid_mw[l].
GridPower grid_power(const BatteryVectors& v, const StateDemand& hy, double og_mw, const NetworkConfig& config);

}  // namespace greenassoc
