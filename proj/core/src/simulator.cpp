#include "greenassoc/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/random/normal_distribution.hpp>

namespace greenassoc {

namespace {

constexpr int kReachBins = 4096;

SimRng replication_rng(std::uint64_t seed, int replication) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(replication)};
  return SimRng(seq);
}

}  // namespace

int Realization::count(BsType type) const {
  return static_cast<int>(std::count_if(bs.begin(), bs.end(), [type](const SimBs& b) { return b.type == type; }));
}

double Realization::distance2(double x0, double y0, double x1, double y1) const {
  double dx = std::abs(x0 - x1);
  double dy = std::abs(y0 - y1);
  dx = std::min(dx, side_m - dx);
  dy = std::min(dy, side_m - dy);
  return dx * dx + dy * dy;
}

Realization sample_realization(const NetworkConfig& config, SimRng& rng) {
  if (!(config.sim_area_m2 > 0.0)) throw std::invalid_argument("simulated area must be positive");
  Realization r;
  r.side_m = std::sqrt(config.sim_area_m2);
  std::uniform_real_distribution<double> coord(0.0, r.side_m);
  int id = 0;
  for (BsType type : {BsType::EH, BsType::HY, BsType::OG}) {
    const double mean = config.density(type) * config.sim_area_m2;
    if (!(mean > 0.0)) continue;
    std::poisson_distribution<long> count(mean);
    const long n = count(rng);
    for (long i = 0; i < n; ++i) {
      SimBs b;
      b.id = id++;
      b.type = type;
      b.x = coord(rng);
      b.y = coord(rng);
      b.battery_units = has_battery(type) ? config.battery(type).capacity_units : 0;
      r.bs.push_back(b);
    }
  }
  return r;
}

SlotSimulator::SlotSimulator(const NetworkConfig& config, const Scheme& scheme)
    : config_(config), scheme_(scheme), radio_(config) {
  cap_mw_ = config.p_tx_max_mw;
  for (BsType type : {BsType::EH, BsType::HY}) {
    const BatterySpec& b = config.battery(type);
    cap_mw_ = std::max(cap_mw_, radio_.availability_load_inverse(b.capacity_units * b.unit_mw));
  }

  // P(p <= cap) at the near edge of each squared-distance bin bounds the whole bin.
  const double side = std::sqrt(config.sim_area_m2);
  const double max_d2 = side * side / 2.0;
  bin_width_d2_ = max_d2 / kReachBins;
  reach_.resize(kReachBins + 1);
  for (int k = 0; k <= kReachBins; ++k) {
    const double d2 = k * bin_width_d2_;
    if (d2 == 0.0) {
      reach_[k] = 1.0;
      continue;
    }
    const double base = radio_.p_rx_kappa() * std::pow(d2, config.alpha / 2.0);
    const double x_min = 10.0 * std::log10(base / cap_mw_);
    if (config.sigma_db <= 0.0) {
      reach_[k] = x_min <= 0.0 ? 1.0 : 0.0;
    } else {
      reach_[k] = 0.5 * std::erfc(x_min / (config.sigma_db * std::numbers::sqrt2));
    }
  }
}

double SlotSimulator::reach_bound(double d2) const {
  const auto k = static_cast<std::size_t>(d2 / bin_width_d2_);
  return k < reach_.size() ? reach_[k] : reach_.back();
}

void SlotSimulator::sample_links(const Realization& realization, const SimUser& user, SimRng& rng,
                                 std::vector<BsLink>& out) const {
  out.clear();
  const double sigma = config_.sigma_db;
  const double prk = radio_.p_rx_kappa();
  const double half_alpha = config_.alpha / 2.0;
  const bool square = config_.alpha == 4.0;
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  boost::random::normal_distribution<double> normal(0.0, 1.0);

  for (const SimBs& b : realization.bs) {
    const double d2 = realization.distance2(user.x, user.y, b.x, b.y);
    const double reach = reach_bound(d2);
    if (reach <= 0.0) continue;
    double x_db = 0.0;
    if (sigma > 0.0) {
      if (reach < 0.5) {
        // Inverse-CDF draw: a uniform above the bin's reach means the link cannot be used.
        double u = uniform(rng);
        if (u > reach) continue;
        if (u <= 0.0) u = 1e-300;
        x_db = sigma * std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * u);
      } else {
        x_db = sigma * normal(rng);
      }
    }
    const double path = square ? d2 * d2 : std::pow(d2, half_alpha);
    const double p = prk * path * std::exp(-x_db / kZeta);
    if (p > cap_mw_) continue;
    out.push_back({b.id, b.type, b.battery_units, p});
  }
}

namespace {

struct Settler {
  const NetworkConfig& config;
  const Scheme& scheme;

  SlotLedger settle(Realization& r, std::span<const AssociationOutcome> outcomes, std::span<const long> harvest) const {
    SlotLedger ledger;
    ledger.users = static_cast<int>(outcomes.size());
    std::vector<std::vector<AssociationOutcome>> buckets(r.bs.size());
    for (const AssociationOutcome& o : outcomes) {
      if (!o.chosen_bs) {
        ++ledger.outage;
        continue;
      }
      buckets[static_cast<std::size_t>(*o.chosen_bs)].push_back(o);
    }
    const bool full = scheme.assumes_full_batteries();
    for (std::size_t i = 0; i < r.bs.size(); ++i) {
      SimBs& b = r.bs[i];
      const long h = i < harvest.size() ? harvest[i] : 0;
      int level = b.battery_units;
      if (full && has_battery(b.type)) level = config.battery(b.type).capacity_units;
      if (!buckets[i].empty()) {
        const Selection sel = select_users(b.type, buckets[i], level, config, scheme.hy_service());
        ledger.served_renewable += sel.served_renewable;
        ledger.served_grid += sel.served_grid;
        ledger.dropped += static_cast<int>(sel.dropped.size());
        ledger.battery_units_consumed += sel.battery_units_drawn;
        (b.type == BsType::OG ? ledger.grid_mw_og : ledger.grid_mw_hy) += sel.grid_mw;
        level -= sel.battery_units_drawn;
      }
      if (has_battery(b.type)) {
        const int capacity = config.battery(b.type).capacity_units;
        ledger.harvest_units += h;
        b.battery_units = full ? capacity : static_cast<int>(std::min<long>(capacity, level + h));
      }
    }
    return ledger;
  }
};

}  // namespace

SlotLedger SlotSimulator::run_slot(Realization& realization, SimRng& rng) const {
  realization.users.clear();
  const double mean_users = config_.omega * realization.area_m2();
  if (mean_users > 0.0) {
    std::poisson_distribution<long> count(mean_users);
    const long n = count(rng);
    std::uniform_real_distribution<double> coord(0.0, realization.side_m);
    realization.users.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
      const double x = coord(rng);
      const double y = coord(rng);
      realization.users.push_back({static_cast<int>(i), x, y});
    }
  }

  std::vector<AssociationOutcome> outcomes;
  outcomes.reserve(realization.users.size());
  std::vector<BsLink> links;
  std::vector<CandidateBs> candidates;
  const bool full = scheme_.assumes_full_batteries();
  for (const SimUser& u : realization.users) {
    sample_links(realization, u, rng, links);
    partition(links, config_, radio_, full, candidates);
    outcomes.push_back(choose(candidates, scheme_, u.id));
  }

  std::vector<long> harvest(realization.bs.size(), 0);
  for (std::size_t i = 0; i < realization.bs.size(); ++i) {
    const SimBs& b = realization.bs[i];
    if (!has_battery(b.type)) continue;
    const HarvestSpec& spec = config_.harvest(b.type);
    const double rate = spec.burst_rate();
    if (!(rate > 0.0)) continue;
    std::poisson_distribution<long> bursts(rate);
    harvest[i] = bursts(rng) * spec.burst_units;
  }
  return Settler{config_, scheme_}.settle(realization, outcomes, harvest);
}

SlotLedger SlotSimulator::run_slot(Realization& realization, std::span<const std::vector<BsLink>> links,
                                   std::span<const long> harvest) const {
  std::vector<AssociationOutcome> outcomes;
  outcomes.reserve(links.size());
  std::vector<CandidateBs> candidates;
  const bool full = scheme_.assumes_full_batteries();
  for (std::size_t u = 0; u < links.size(); ++u) {
    partition(links[u], config_, radio_, full, candidates);
    outcomes.push_back(choose(candidates, scheme_, static_cast<int>(u)));
  }
  return Settler{config_, scheme_}.settle(realization, outcomes, harvest);
}

std::optional<double> ReplicationTally::outage_prob() const {
  if (users <= 0) return std::nullopt;
  return static_cast<double>(outage) / static_cast<double>(users);
}

ReplicationTally run_replication(const NetworkConfig& config, const Scheme& scheme, int replication) {
  SimRng rng = replication_rng(config.seed, replication);
  Realization r = sample_realization(config, rng);
  const SlotSimulator sim(config, scheme);
  ReplicationTally tally;
  const int total = config.warmup_slots + config.slots;
  for (int s = 0; s < total; ++s) {
    const SlotLedger ledger = sim.run_slot(r, rng);
    if (s < config.warmup_slots) continue;
    tally.users += ledger.users;
    tally.outage += ledger.outage;
    tally.dropped += ledger.dropped;
    tally.served_renewable += ledger.served_renewable;
    tally.served_grid += ledger.served_grid;
    tally.grid_mw_hy += ledger.grid_mw_hy;
    tally.grid_mw_og += ledger.grid_mw_og;
    ++tally.slots;
  }
  return tally;
}

double confidence_half_width(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  const boost::math::students_t dist(static_cast<double>(n - 1));
  const double t = boost::math::quantile(boost::math::complement(dist, 0.025));
  return t * sd / std::sqrt(static_cast<double>(n));
}

MetricsReport estimate(const NetworkConfig& config, const Scheme& scheme, const SimulationOptions& options) {
  if (config.replications < 1) throw std::invalid_argument("at least one replication is required");
  if (config.slots < 1) throw std::invalid_argument("at least one measured slot is required");
  const int n = config.replications;
  std::vector<ReplicationTally> tallies(static_cast<std::size_t>(n));

  unsigned threads = options.threads > 0 ? static_cast<unsigned>(options.threads) : std::thread::hardware_concurrency();
  threads = std::clamp(threads, 1u, static_cast<unsigned>(n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) tallies[static_cast<std::size_t>(i)] = run_replication(config, scheme, i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (int i = next++; i < n; i = next++) tallies[static_cast<std::size_t>(i)] = run_replication(config, scheme, i);
      });
    }
    for (std::thread& th : pool) th.join();
  }

  MetricsReport report;
  long users = 0;
  long outage = 0;
  long slots = 0;
  double hy = 0.0;
  double og = 0.0;
  std::vector<double> outage_values;
  std::vector<double> grid_values;
  for (const ReplicationTally& t : tallies) {
    users += t.users;
    outage += t.outage;
    slots += t.slots;
    hy += t.grid_mw_hy / t.slots;
    og += t.grid_mw_og / t.slots;
    if (auto p = t.outage_prob()) outage_values.push_back(*p);
    grid_values.push_back(t.mean_grid_mw());
  }
  const double area = config.sim_area_m2;
  report.grid_power_hy_mw_per_m2 = hy / n / area;
  report.grid_power_og_mw_per_m2 = og / n / area;
  report.grid_power_total_mw = (hy + og) / n;
  report.grid_power_ci = confidence_half_width(grid_values);
  report.users_per_slot = static_cast<double>(users) / static_cast<double>(slots);
  if (users > 0) {
    report.outage_prob = static_cast<double>(outage) / static_cast<double>(users);
    report.outage_ci = confidence_half_width(outage_values);
  } else {
    report.note = "no users observed";
  }
  return report;
}

}  // namespace greenassoc
