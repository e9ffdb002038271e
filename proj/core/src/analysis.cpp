#include "greenassoc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace greenassoc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t type_index(BsType type) { return static_cast<std::size_t>(type); }

void check_vector(const Eigen::RowVectorXd& v, int capacity, const char* what) {
  if (v.size() != capacity + 1) throw std::invalid_argument(std::string(what) + " has the wrong number of states");
}

// Rows P_T(m | l) for l in [l_begin, l_end] from one scaled compound-Poisson sequence.
void append_rows(const std::vector<double>& pmf, int l_begin, int l_end, ConsumptionNormalization norm,
                 ConsumptionTable& rows) {
  const int first = norm == ConsumptionNormalization::Verbatim ? 1 : 0;
  for (int l = l_begin; l <= l_end; ++l) {
    std::vector<double> row(static_cast<std::size_t>(l) + 1, 0.0);
    double sum = 0.0;
    if (l > 0)
      for (int m = first; m <= l; ++m) sum += pmf[m];
    if (l == 0 || !(sum > 0.0)) {
      row[0] = 1.0;
    } else {
      for (int m = first; m <= l; ++m) row[m] = pmf[m] / sum;
    }
    rows.push_back(std::move(row));
  }
}

}  // namespace

int CoverageTable::lowest_available_state(double p) const {
  if (!(p > 0.0)) return 0;
  auto it = std::lower_bound(p_cov.begin(), p_cov.end(), p);
  return static_cast<int>(it - p_cov.begin());
}

double power_coverage(int l, BsType type, const NetworkConfig& config) {
  const BatterySpec& battery = config.battery(type);
  if (l < 0 || l > battery.capacity_units) throw std::out_of_range("battery state out of range");
  if (l == 0) return 0.0;
  return Radio(config).availability_load_inverse(l * battery.unit_mw);
}

CoverageTable coverage_table(BsType type, const NetworkConfig& config) {
  const BatterySpec& battery = config.battery(type);
  const Radio radio(config);
  CoverageTable table;
  table.p_cov.resize(static_cast<std::size_t>(battery.capacity_units) + 1);
  table.p_cov[0] = 0.0;
  for (int l = 1; l <= battery.capacity_units; ++l)
    table.p_cov[static_cast<std::size_t>(l)] = radio.availability_load_inverse(l * battery.unit_mw);
  return table;
}

Eigen::RowVectorXd point_mass(int capacity, int state) {
  Eigen::RowVectorXd v = Eigen::RowVectorXd::Zero(capacity + 1);
  v(state) = 1.0;
  return v;
}

BatteryVectors BatteryVectors::uniform(const NetworkConfig& config) {
  const int le = config.battery_eh.capacity_units;
  const int lh = config.battery_hy.capacity_units;
  return {Eigen::RowVectorXd::Constant(le + 1, 1.0 / (le + 1)), Eigen::RowVectorXd::Constant(lh + 1, 1.0 / (lh + 1))};
}

BatteryVectors BatteryVectors::full(const NetworkConfig& config) {
  return {point_mass(config.battery_eh.capacity_units, config.battery_eh.capacity_units),
          point_mass(config.battery_hy.capacity_units, config.battery_hy.capacity_units)};
}

BatteryVectors BatteryVectors::empty(const NetworkConfig& config) {
  return {point_mass(config.battery_eh.capacity_units, 0), point_mass(config.battery_hy.capacity_units, 0)};
}

Landscape::Landscape(const NetworkConfig& config, const Scheme& scheme, const BatteryVectors& batteries)
    : config_(config),
      scheme_(scheme),
      radio_(config),
      batteries_(scheme.assumes_full_batteries() ? BatteryVectors::full(config) : batteries),
      coverage_{coverage_table(BsType::EH, config), coverage_table(BsType::HY, config)},
      bs_{PowerLawDensity(radio_.delta()), PowerLawDensity(radio_.delta()), PowerLawDensity(radio_.delta())},
      available_{bs_},
      grid_{bs_} {
  check_vector(batteries_.eh, config.battery_eh.capacity_units, "EH battery vector");
  check_vector(batteries_.hy, config.battery_hy.capacity_units, "HY battery vector");

  const double d = radio_.delta();
  const double u = radio_.upsilon();
  const double pmax = config.p_tx_max_mw;
  for (BsType t : {BsType::EH, BsType::HY, BsType::OG})
    bs_[type_index(t)] = PowerLawDensity::power_law(config.density(t) * u, d);
  for (BsType t : {BsType::EH, BsType::HY}) {
    const auto& cov = coverage_[type_index(t)].p_cov;
    const Eigen::RowVectorXd& v = batteries_.of(t);
    available_[type_index(t)] = PowerLawDensity::battery_weighted(config.density(t) * u, d,
                                                                  std::span<const double>(v.data(), v.size()), cov);
  }
  grid_[type_index(BsType::HY)] =
      bs_[type_index(BsType::HY)].capped(pmax) - available_[type_index(BsType::HY)].capped(pmax);
  grid_[type_index(BsType::OG)] = bs_[type_index(BsType::OG)].capped(pmax);

  if (scheme.weighs_by_supply()) {
    const double ba = scheme.kind() == Scheme::Kind::BestCA ? 1.0 : scheme.beta_a();
    const double bg = scheme.kind() == Scheme::Kind::BestCA ? 1.0 : scheme.beta_g();
    streams_.push_back({BsType::EH, Supply::Renewable, ba, available_[type_index(BsType::EH)]});
    streams_.push_back({BsType::HY, Supply::Renewable, ba, available_[type_index(BsType::HY)]});
    streams_.push_back({BsType::HY, Supply::Grid, bg, grid_[type_index(BsType::HY)]});
    streams_.push_back({BsType::OG, Supply::Grid, bg, grid_[type_index(BsType::OG)]});
  } else {
    // A hybrid BS is a candidate when available or within P_max, whatever its supply.
    const auto& cov = coverage_[type_index(BsType::HY)].p_cov;
    std::vector<double> reach(cov.size());
    for (std::size_t l = 0; l < cov.size(); ++l) reach[l] = std::max(cov[l], pmax);
    const PowerLawDensity candidates = PowerLawDensity::battery_weighted(
        config.lambda_hy * u, d, std::span<const double>(batteries_.hy.data(), batteries_.hy.size()), reach);
    streams_.push_back({BsType::EH, Supply::Renewable, scheme.tier_bias(BsType::EH), available_[type_index(BsType::EH)]});
    streams_.push_back({BsType::HY, Supply::Renewable, scheme.tier_bias(BsType::HY), candidates});
    streams_.push_back({BsType::OG, Supply::Grid, scheme.tier_bias(BsType::OG), grid_[type_index(BsType::OG)]});
  }

  // Biased power x of every competitor: sum over streams of Lambda_s(x / w_s).
  PowerLawDensity weighted(d);
  for (const Stream& s : streams_) weighted = weighted + s.density.scaled(1.0 / s.weight);
  const double omega_coef = config.omega * u;
  served_.reserve(streams_.size());
  for (const Stream& s : streams_) served_.emplace_back(omega_coef, weighted.scaled(s.weight));
}

const CoverageTable& Landscape::coverage(BsType type) const {
  if (!has_battery(type)) throw std::invalid_argument("on-grid BSs have no battery");
  return coverage_[type_index(type)];
}

const PowerLawDensity& Landscape::bs(BsType type) const { return bs_[type_index(type)]; }
const PowerLawDensity& Landscape::available(BsType type) const { return available_[type_index(type)]; }
const PowerLawDensity& Landscape::grid(BsType type) const { return grid_[type_index(type)]; }

const Landscape::Stream* Landscape::find_stream(BsType type, Supply supply) const {
  for (const Stream& s : streams_)
    if (s.type == type && s.supply == supply) return &s;
  return nullptr;
}

const VoidWeightedIntensity* Landscape::intensity(BsType type, Supply supply) const {
  for (std::size_t i = 0; i < streams_.size(); ++i)
    if (streams_[i].type == type && streams_[i].supply == supply) return &served_[i];
  return nullptr;
}

std::pair<double, double> Landscape::window(BsType type, Supply supply, int l) const {
  const double pmax = config_.p_tx_max_mw;
  if (!find_stream(type, supply)) return {0.0, 0.0};
  if (type == BsType::OG) return {0.0, pmax};
  const CoverageTable& table = coverage_[type_index(type)];
  if (scheme_.assumes_full_batteries()) l = table.capacity();
  if (l < 0 || l > table.capacity()) throw std::out_of_range("battery state out of range");
  const double cov = table.p_cov[static_cast<std::size_t>(l)];
  if (supply == Supply::Grid) return {std::min(cov, pmax), pmax};
  if (type == BsType::HY && !scheme_.weighs_by_supply()) return {0.0, std::max(cov, pmax)};
  return {0.0, cov};
}

double Landscape::assoc_prob(double p, BsType type, Supply supply, int l) const {
  const auto [lo, hi] = window(type, supply, l);
  if (!(hi > lo)) return 0.0;
  const bool inside = (p > lo || (lo == 0.0 && p >= 0.0)) && p <= hi;
  if (!inside) return 0.0;
  return std::exp(-intensity(type, supply)->lambda()(p));
}

double Landscape::served(double p, BsType type, Supply supply, int l) const {
  const auto [lo, hi] = window(type, supply, l);
  if (!(hi > lo) || !(p > lo)) return 0.0;
  const VoidWeightedIntensity& f = *intensity(type, supply);
  return f(std::min(p, hi)) - f(lo);
}

double Landscape::served_power(double p, BsType type, Supply supply, int l) const {
  const auto [lo, hi] = window(type, supply, l);
  if (!(hi > lo) || !(p > lo)) return 0.0;
  const VoidWeightedIntensity& f = *intensity(type, supply);
  return f.first_moment(std::min(p, hi)) - f.first_moment(lo);
}

double Landscape::outage_probability() const {
  const double pmax = config_.p_tx_max_mw;
  const double eh = available_[type_index(BsType::EH)](coverage_[type_index(BsType::EH)].p_cov.back());
  return std::exp(-eh) * std::exp(-bs_[type_index(BsType::HY)](pmax) - bs_[type_index(BsType::OG)](pmax));
}

double Landscape::og_grid_mw() const { return served_power(kInf, BsType::OG, Supply::Grid, 0); }

StateDemand Landscape::demand(BsType type) const {
  if (!has_battery(type)) throw std::invalid_argument("on-grid BSs have no battery");
  const BatterySpec& battery = config_.battery(type);
  const int L = battery.capacity_units;
  const double eps = battery.unit_mw;
  const VoidWeightedIntensity& f = *intensity(type, Supply::Renewable);

  std::vector<double> hi(static_cast<std::size_t>(L) + 1);
  for (int l = 0; l <= L; ++l) hi[static_cast<std::size_t>(l)] = window(type, Supply::Renewable, l).second;
  const double hi_max = *std::max_element(hi.begin(), hi.end());
  const int q_max = hi_max > 0.0 ? static_cast<int>(std::ceil(hi_max / eps - 1e-12)) : 0;
  std::vector<double> grid_values(static_cast<std::size_t>(q_max) + 1);
  for (int q = 0; q <= q_max; ++q) grid_values[static_cast<std::size_t>(q)] = f(q * eps);

  StateDemand out;
  out.battery_rows.reserve(static_cast<std::size_t>(L) + 1);
  out.grid_mw.assign(static_cast<std::size_t>(L) + 1, 0.0);

  std::vector<double> atoms;
  std::vector<double> units_mean(static_cast<std::size_t>(L) + 1, 0.0);
  int l = 0;
  while (l <= L) {
    // States sharing the same window share one recursion.
    int l_end = l;
    while (l_end + 1 <= L && hi[static_cast<std::size_t>(l_end) + 1] == hi[static_cast<std::size_t>(l)]) ++l_end;
    const double cap = hi[static_cast<std::size_t>(l)];
    const int q_cap = cap > 0.0 ? static_cast<int>(std::ceil(cap / eps - 1e-12)) : 0;
    atoms.assign(static_cast<std::size_t>(q_cap), 0.0);
    double units = 0.0;
    for (int q = 1; q <= q_cap; ++q) {
      const double upper = q == q_cap ? f(cap) : grid_values[static_cast<std::size_t>(q)];
      atoms[static_cast<std::size_t>(q) - 1] = std::max(upper - grid_values[static_cast<std::size_t>(q) - 1], 0.0);
      units += q * atoms[static_cast<std::size_t>(q) - 1];
    }
    const auto pmf = compound_poisson_pmf_scaled(atoms, l_end).first;
    append_rows(pmf, l, l_end, config_.consumption_normalization, out.battery_rows);
    for (int k = l; k <= l_end; ++k) units_mean[static_cast<std::size_t>(k)] = units;
    l = l_end + 1;
  }

  if (has_grid(type)) {
    for (int k = 0; k <= L; ++k) {
      // Demand the battery leaves uncovered moves to the grid, converted back from units to mW
      // with the state's own rounding ratio.
      const double battery_mw = served_power(kInf, type, Supply::Renewable, k);
      const double units = units_mean[static_cast<std::size_t>(k)];
      const double drawn = row_mean(out.battery_rows[static_cast<std::size_t>(k)]);
      const double covered = units > 0.0 ? std::min(drawn / units, 1.0) * battery_mw : 0.0;
      const double overflow = std::max(battery_mw - covered, 0.0);
      out.grid_mw[static_cast<std::size_t>(k)] = overflow + served_power(kInf, type, Supply::Grid, k);
    }
  }
  return out;
}

double density_bs(double p, BsType type, const NetworkConfig& config) {
  return Radio(config).power_domain_intensity(config.density(type), p);
}

double density_available(double p, BsType type, const Eigen::RowVectorXd& v, const NetworkConfig& config) {
  if (type == BsType::OG) return 0.0;
  check_vector(v, config.battery(type).capacity_units, "battery vector");
  const Radio radio(config);
  const CoverageTable table = coverage_table(type, config);
  return PowerLawDensity::battery_weighted(config.density(type) * radio.upsilon(), radio.delta(),
                                           std::span<const double>(v.data(), v.size()), table.p_cov)(p);
}

double density_grid(double p, BsType type, const Eigen::RowVectorXd& v, const NetworkConfig& config) {
  const double pmax = config.p_tx_max_mw;
  switch (type) {
    case BsType::EH: return 0.0;
    case BsType::OG: return density_bs(std::min(p, pmax), type, config);
    case BsType::HY: {
      const double q = std::min(p, pmax);
      return density_bs(q, type, config) - density_available(q, type, v, config);
    }
  }
  return 0.0;
}

double density_scaled_available(double t, BsType type, const Eigen::RowVectorXd& v, double beta_a, double beta_g,
                                const NetworkConfig& config) {
  if (!(beta_a > 0.0) || !(beta_g > 0.0)) throw std::invalid_argument("biases must be positive");
  return density_available(t * beta_g / beta_a, type, v, config);
}

double density_scaled_grid(double p, BsType type, const Eigen::RowVectorXd& v, double beta_a, double beta_g,
                           const NetworkConfig& config) {
  if (!(beta_a > 0.0) || !(beta_g > 0.0)) throw std::invalid_argument("biases must be positive");
  return density_grid(p * beta_a / beta_g, type, v, config);
}

double assoc_prob(double p, BsType type, Supply supply, int l, const BatteryVectors& v, const NetworkConfig& config,
                  const Scheme& scheme) {
  return Landscape(config, scheme, v).assoc_prob(p, type, supply, l);
}

double served_density(double p, BsType type, Supply supply, int l, const BatteryVectors& v,
                      const NetworkConfig& config, const Scheme& scheme) {
  return Landscape(config, scheme, v).served(p, type, supply, l);
}

double outage_probability(const BatteryVectors& v, const NetworkConfig& config) {
  const double pmax = config.p_tx_max_mw;
  const double eh_cov = power_coverage(config.battery_eh.capacity_units, BsType::EH, config);
  const double eh = density_available(eh_cov, BsType::EH, v.eh, config);
  return std::exp(-eh) * std::exp(-density_bs(pmax, BsType::HY, config) - density_bs(pmax, BsType::OG, config));
}

GridPower grid_power(const BatteryVectors& v, const StateDemand& hy, double og_mw, const NetworkConfig& config) {
  GridPower out;
  out.og_mw_per_m2 = config.lambda_og * og_mw;
  double mean = 0.0;
  for (Eigen::Index l = 0; l < v.hy.size() && l < static_cast<Eigen::Index>(hy.grid_mw.size()); ++l)
    mean += v.hy(l) * hy.grid_mw[static_cast<std::size_t>(l)];
  out.hy_mw_per_m2 = config.lambda_hy * mean;
  return out;
}

}  // namespace greenassoc
