#include "greenassoc/config.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace greenassoc {

std::string_view to_string(BsType type) {
  switch (type) {
    case BsType::EH: return "EH";
    case BsType::HY: return "HY";
    case BsType::OG: return "OG";
  }
  return "?";
}

std::string_view to_string(ConsumptionNormalization norm) {
  switch (norm) {
    case ConsumptionNormalization::Verbatim: return "verbatim";
    case ConsumptionNormalization::IncludeEmpty: return "include_empty";
  }
  return "?";
}

double NetworkConfig::p_rx_mw() const { return dbm_to_mw(p_rx_dbm); }

double NetworkConfig::density(BsType type) const {
  switch (type) {
    case BsType::EH: return lambda_eh;
    case BsType::HY: return lambda_hy;
    case BsType::OG: return lambda_og;
  }
  return 0.0;
}

double& NetworkConfig::density(BsType type) {
  switch (type) {
    case BsType::EH: return lambda_eh;
    case BsType::HY: return lambda_hy;
    case BsType::OG: break;
  }
  return lambda_og;
}

const BatterySpec& NetworkConfig::battery(BsType type) const {
  if (type == BsType::OG) throw std::invalid_argument("on-grid base stations have no battery");
  return type == BsType::EH ? battery_eh : battery_hy;
}

const HarvestSpec& NetworkConfig::harvest(BsType type) const {
  if (type == BsType::OG) throw std::invalid_argument("on-grid base stations do not harvest");
  return type == BsType::EH ? harvest_eh : harvest_hy;
}

NetworkConfig NetworkConfig::defaults() {
  NetworkConfig c;
  c.omega = 50.0 / (std::numbers::pi * 100.0 * 100.0);
  set_harvesting_layout(c, 80.0, 0.4);
  c.lambda_og = 0.0;
  return c;
}

std::vector<Violation> validate(const NetworkConfig& c) {
  std::vector<Violation> out;
  auto check = [&out](bool ok, std::string field, std::string rule) {
    if (!ok) out.push_back({std::move(field), std::move(rule)});
  };
  auto finite_nonneg = [](double x) { return std::isfinite(x) && x >= 0.0; };

  check(std::isfinite(c.kappa) && c.kappa > 0.0, "kappa", "kappa must be positive");
  check(std::isfinite(c.alpha) && c.alpha > 2.0, "alpha", "alpha must exceed 2");
  check(finite_nonneg(c.sigma_db), "sigma_db", "sigma_db must be non-negative");
  check(std::isfinite(c.p_rx_dbm), "p_rx_dbm", "p_rx_dbm must be finite");
  check(finite_nonneg(c.p_tx_max_mw), "p_tx_max_mw", "powers must be non-negative");

  check(finite_nonneg(c.lambda_eh), "lambda_eh", "densities must be non-negative");
  check(finite_nonneg(c.lambda_hy), "lambda_hy", "densities must be non-negative");
  check(finite_nonneg(c.lambda_og), "lambda_og", "densities must be non-negative");
  check(finite_nonneg(c.omega), "omega", "densities must be non-negative");

  for (auto [name, value] : {std::pair{"beta_a", c.beta_a}, std::pair{"beta_g", c.beta_g},
                             std::pair{"beta_eh", c.beta_eh}, std::pair{"beta_hy", c.beta_hy},
                             std::pair{"beta_og", c.beta_og}}) {
    check(std::isfinite(value) && value > 0.0, name, "biases must be positive");
  }

  for (auto [prefix, b] : {std::pair{"battery_eh", &c.battery_eh}, std::pair{"battery_hy", &c.battery_hy}}) {
    check(b->capacity_units >= 1, std::string(prefix) + ".capacity_units", "battery capacity must be at least 1 unit");
    check(std::isfinite(b->unit_mw) && b->unit_mw > 0.0, std::string(prefix) + ".unit_mw",
          "battery unit must be positive");
  }
  for (auto [prefix, h] : {std::pair{"harvest_eh", &c.harvest_eh}, std::pair{"harvest_hy", &c.harvest_hy}}) {
    check(finite_nonneg(h->mean_units_per_slot), std::string(prefix) + ".mean_units_per_slot",
          "harvest mean must be non-negative");
    check(h->burst_units >= 1, std::string(prefix) + ".burst_units", "harvest burst must be at least 1 unit");
  }

  check(std::isfinite(c.sim_area_m2) && c.sim_area_m2 > 0.0, "sim_area_m2", "simulation area must be positive");
  check(c.slots >= 1, "slots", "slots must be at least 1");
  check(c.warmup_slots >= 0, "warmup_slots", "warmup_slots must be non-negative");
  check(c.replications >= 1, "replications", "replications must be at least 1");
  return out;
}

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }

double density_from_spacing(double spacing_m) {
  if (std::isinf(spacing_m)) return 0.0;
  if (!(spacing_m > 0.0)) throw std::invalid_argument("spacing must be positive");
  return 1.0 / (std::numbers::pi * spacing_m * spacing_m);
}

double spacing_from_density(double density) {
  if (density <= 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / std::sqrt(std::numbers::pi * density);
}

void set_harvesting_layout(NetworkConfig& c, double mean_spacing_r, double hybrid_fraction_c) {
  if (!(hybrid_fraction_c >= 0.0 && hybrid_fraction_c <= 1.0))
    throw std::invalid_argument("hybrid fraction must lie in [0, 1]");
  const double total = density_from_spacing(mean_spacing_r);
  c.lambda_hy = hybrid_fraction_c * total;
  c.lambda_eh = (1.0 - hybrid_fraction_c) * total;
}

double harvesting_spacing(const NetworkConfig& c) { return spacing_from_density(c.lambda_eh + c.lambda_hy); }

double hybrid_fraction(const NetworkConfig& c) {
  const double total = c.lambda_eh + c.lambda_hy;
  return total > 0.0 ? c.lambda_hy / total : 0.0;
}

}  // namespace greenassoc
