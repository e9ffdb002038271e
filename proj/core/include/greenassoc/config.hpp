#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace greenassoc {

/// Powering of a base station: harvesting only, hybrid (harvesting + grid), grid only.
enum class BsType { EH, HY, OG };

std::string_view to_string(BsType type);

inline constexpr bool has_battery(BsType type) { return type != BsType::OG; }
inline constexpr bool has_grid(BsType type) { return type != BsType::EH; }

/// Battery discretization: capacity in units and the power carried by one unit.
struct BatterySpec {
  int capacity_units = 1000;
  double unit_mw = 0.75;

  double capacity_mw() const { return capacity_units * unit_mw; }
  bool operator==(const BatterySpec&) const = default;
};

/// Harvest arrivals per slot: Poisson(mean / burst) bursts of `burst_units` whole units.
struct HarvestSpec {
  double mean_units_per_slot = 100.0;
  int burst_units = 30;

  double burst_rate() const { return mean_units_per_slot / burst_units; }
  bool operator==(const HarvestSpec&) const = default;
};

/// How the battery consumption row of a state is normalized.
///
/// `Verbatim` conditions on 1..l consumed units (a non-empty slot), `IncludeEmpty`
/// conditions on 0..l and keeps the mass of slots where nobody is served.
enum class ConsumptionNormalization { Verbatim, IncludeEmpty };

std::string_view to_string(ConsumptionNormalization norm);

/// Every physical, geometric, battery and bias parameter of one scenario.
///
/// Powers are linear (mW) everywhere except `p_rx_dbm`, densities are per m².
struct NetworkConfig {
  double kappa = 1.0;
  double alpha = 4.0;
  double sigma_db = 4.0;
  double p_rx_dbm = -65.0;
  double p_tx_max_mw = 500.0;

  double lambda_eh = 0.0;
  double lambda_hy = 0.0;
  double lambda_og = 0.0;
  double omega = 0.0;

  double beta_a = 1.0;
  double beta_g = 1.0;
  // Tier biases of the type-based reference scheme.
  double beta_eh = 1.0;
  double beta_hy = 1.0;
  double beta_og = 1.0;

  BatterySpec battery_eh;
  BatterySpec battery_hy;
  HarvestSpec harvest_eh;
  HarvestSpec harvest_hy;

  double sim_area_m2 = 1.0e6;
  int slots = 2000;
  int warmup_slots = 200;
  int replications = 20;
  std::uint64_t seed = 1;

  ConsumptionNormalization consumption_normalization = ConsumptionNormalization::Verbatim;

  double p_rx_mw() const;
  double density(BsType type) const;
  double& density(BsType type);
  const BatterySpec& battery(BsType type) const;
  const HarvestSpec& harvest(BsType type) const;

  bool operator==(const NetworkConfig&) const = default;

  /// Reference operating point: R = 80 m mean spacing, 40% hybrid, no on-grid BSs.
  static NetworkConfig defaults();
};

struct Violation {
  std::string field;
  std::string rule;

  bool operator==(const Violation&) const = default;
};

/// Lists every broken invariant of `config`; empty when the config is usable.
std::vector<Violation> validate(const NetworkConfig& config);

double dbm_to_mw(double dbm);
double mw_to_dbm(double mw);

/// Density of a PPP whose points are `spacing_m` apart on average, 1/(pi r^2).
/// An infinite spacing yields 0.
double density_from_spacing(double spacing_m);
double spacing_from_density(double density);

/// Sets lambda_hy = c/(pi R^2) and lambda_eh = (1-c)/(pi R^2).
void set_harvesting_layout(NetworkConfig& config, double mean_spacing_r, double hybrid_fraction_c);

/// Total EH+HY spacing R and the hybrid share c implied by the current densities.
double harvesting_spacing(const NetworkConfig& config);
double hybrid_fraction(const NetworkConfig& config);

}  // namespace greenassoc
