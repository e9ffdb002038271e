#include "greenassoc/association.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace greenassoc {

std::string_view to_string(SetTag tag) {
  switch (tag) {
    case SetTag::Available: return "Available";
    case SetTag::Grid: return "Grid";
    case SetTag::Excluded: return "Excluded";
  }
  return "?";
}

std::string_view to_string(Supply supply) {
  switch (supply) {
    case Supply::Renewable: return "Renewable";
    case Supply::Grid: return "Grid";
    case Supply::Outage: return "Outage";
  }
  return "?";
}

Scheme::Scheme(Kind kind, double a, double g, double eh, double hy, double og)
    : kind_(kind), beta_a_(a), beta_g_(g), beta_eh_(eh), beta_hy_(hy), beta_og_(og) {
  for (double b : {a, g, eh, hy, og})
    if (!(b > 0.0) || !std::isfinite(b)) throw std::invalid_argument("biases must be positive");
}

Scheme Scheme::adaptive(double beta_a, double beta_g) {
  return Scheme(Kind::AdaptiveBias, beta_a, beta_g, 1.0, 1.0, 1.0);
}

Scheme Scheme::fixed(double beta_eh, double beta_hy, double beta_og) {
  return Scheme(Kind::FixedBias, 1.0, 1.0, beta_eh, beta_hy, beta_og);
}

Scheme Scheme::no_bias() { return Scheme(Kind::NoBias, 1.0, 1.0, 1.0, 1.0, 1.0); }

Scheme Scheme::best() { return Scheme(Kind::BestCA, 1.0, 1.0, 1.0, 1.0, 1.0); }

Scheme Scheme::from_config(Kind kind, const NetworkConfig& c) {
  switch (kind) {
    case Kind::AdaptiveBias: return adaptive(c.beta_a, c.beta_g);
    case Kind::FixedBias: return fixed(c.beta_eh, c.beta_hy, c.beta_og);
    case Kind::NoBias: return no_bias();
    case Kind::BestCA: return best();
  }
  return no_bias();
}

std::optional<Scheme::Kind> Scheme::parse_kind(std::string_view name) {
  for (Kind k : {Kind::AdaptiveBias, Kind::FixedBias, Kind::NoBias, Kind::BestCA}) {
    if (name == Scheme::name(k)) return k;
  }
  if (name == "adaptive") return Kind::AdaptiveBias;
  if (name == "fixed") return Kind::FixedBias;
  if (name == "nobias") return Kind::NoBias;
  if (name == "best") return Kind::BestCA;
  return std::nullopt;
}

std::string_view Scheme::name(Kind kind) {
  switch (kind) {
    case Kind::AdaptiveBias: return "CA-Abeta";
    case Kind::FixedBias: return "CA-Fbeta";
    case Kind::NoBias: return "CA-noBeta";
    case Kind::BestCA: return "Best-CA";
  }
  return "?";
}

double Scheme::tier_bias(BsType type) const {
  switch (type) {
    case BsType::EH: return beta_eh_;
    case BsType::HY: return beta_hy_;
    case BsType::OG: return beta_og_;
  }
  return 1.0;
}

void partition(std::span<const BsLink> links, const NetworkConfig& config, const Radio& radio,
               bool assume_full, std::vector<CandidateBs>& out) {
  out.clear();
  out.reserve(links.size());
  for (const BsLink& link : links) {
    CandidateBs c;
    c.bs_id = link.bs_id;
    c.type = link.type;
    c.required_power_mw = link.required_power_mw;

    bool available = false;
    if (has_battery(link.type)) {
      const BatterySpec& battery = config.battery(link.type);
      const int level = assume_full ? battery.capacity_units : link.battery_units;
      c.battery_units = level;
      available = radio.availability_load(link.required_power_mw) <= level * battery.unit_mw;
    }

    if (available) {
      c.tag = SetTag::Available;
    } else if (has_grid(link.type) && link.required_power_mw <= config.p_tx_max_mw) {
      c.tag = SetTag::Grid;
    } else {
      c.tag = SetTag::Excluded;
    }
    out.push_back(c);
  }
}

std::vector<CandidateBs> partition(std::span<const BsLink> links, const NetworkConfig& config, bool assume_full) {
  std::vector<CandidateBs> out;
  partition(links, config, Radio(config), assume_full, out);
  return out;
}

namespace {

// Strict "better than" on (biased power, prefer renewable, lowest id).
bool better(double biased, bool renewable, int id, double best_biased, bool best_renewable, int best_id) {
  if (biased != best_biased) return biased < best_biased;
  if (renewable != best_renewable) return renewable;
  return id < best_id;
}

const CandidateBs* closest_with_tag(std::span<const CandidateBs> candidates, SetTag tag) {
  const CandidateBs* best = nullptr;
  for (const CandidateBs& c : candidates) {
    if (c.tag != tag) continue;
    if (!best || c.required_power_mw < best->required_power_mw ||
        (c.required_power_mw == best->required_power_mw && c.bs_id < best->bs_id)) {
      best = &c;
    }
  }
  return best;
}

}  // namespace

AssociationOutcome choose(std::span<const CandidateBs> candidates, const Scheme& scheme, int user_id) {
  AssociationOutcome out;
  out.user_id = user_id;

  const CandidateBs* chosen = nullptr;
  double chosen_biased = std::numeric_limits<double>::infinity();

  if (scheme.weighs_by_supply()) {
    const CandidateBs* renewable = closest_with_tag(candidates, SetTag::Available);
    const CandidateBs* grid = closest_with_tag(candidates, SetTag::Grid);
    const double ba = scheme.kind() == Scheme::Kind::BestCA ? 1.0 : scheme.beta_a();
    const double bg = scheme.kind() == Scheme::Kind::BestCA ? 1.0 : scheme.beta_g();
    if (renewable) {
      chosen = renewable;
      chosen_biased = ba * renewable->required_power_mw;
    }
    if (grid) {
      const double biased = bg * grid->required_power_mw;
      if (!chosen || biased < chosen_biased) {
        chosen = grid;
        chosen_biased = biased;
      }
    }
  } else {
    bool chosen_renewable = false;
    for (const CandidateBs& c : candidates) {
      if (c.tag == SetTag::Excluded) continue;
      const double biased = scheme.tier_bias(c.type) * c.required_power_mw;
      const bool renewable = c.tag == SetTag::Available;
      if (!chosen || better(biased, renewable, c.bs_id, chosen_biased, chosen_renewable, chosen->bs_id)) {
        chosen = &c;
        chosen_biased = biased;
        chosen_renewable = renewable;
      }
    }
  }

  if (!chosen) return out;
  out.chosen_bs = chosen->bs_id;
  out.chosen_type = chosen->type;
  out.supply = chosen->tag == SetTag::Available ? Supply::Renewable : Supply::Grid;
  out.required_power_mw = chosen->required_power_mw;
  out.biased_power_mw = chosen_biased;
  return out;
}

int units_for(double p_mw, double unit_mw) {
  if (p_mw <= 0.0) return 0;
  return static_cast<int>(std::ceil(p_mw / unit_mw));
}

Selection select_users(BsType type, std::span<const AssociationOutcome> associated, int battery_units,
                       const NetworkConfig& config, HyService service) {
  Selection sel;
  if (associated.empty()) return sel;

  std::vector<const AssociationOutcome*> battery_queue;
  std::vector<const AssociationOutcome*> grid_queue;
  for (const AssociationOutcome& a : associated) {
    if (a.supply == Supply::Outage) continue;
    const bool from_battery = type == BsType::EH ||
                              (type == BsType::HY && (service == HyService::BatteryFirst || a.supply == Supply::Renewable));
    (from_battery ? battery_queue : grid_queue).push_back(&a);
  }
  auto ascending = [](const AssociationOutcome* x, const AssociationOutcome* y) {
    if (x->required_power_mw != y->required_power_mw) return x->required_power_mw < y->required_power_mw;
    return x->user_id < y->user_id;
  };

  std::vector<const AssociationOutcome*> overflow;
  if (!battery_queue.empty()) {
    std::sort(battery_queue.begin(), battery_queue.end(), ascending);
    const double unit = config.battery(type).unit_mw;
    int remaining = std::max(battery_units, 0);
    std::size_t i = 0;
    for (; i < battery_queue.size(); ++i) {
      const AssociationOutcome* a = battery_queue[i];
      const int units = units_for(a->required_power_mw, unit);
      if (units > remaining) break;
      remaining -= units;
      sel.battery_units_drawn += units;
      sel.served.push_back({a->user_id, Supply::Renewable, a->required_power_mw, units});
      ++sel.served_renewable;
    }
    overflow.assign(battery_queue.begin() + static_cast<std::ptrdiff_t>(i), battery_queue.end());
  }

  auto serve_from_grid = [&](const AssociationOutcome* a) {
    if (has_grid(type) && a->required_power_mw <= config.p_tx_max_mw) {
      sel.grid_mw += a->required_power_mw;
      sel.served.push_back({a->user_id, Supply::Grid, a->required_power_mw, 0});
      ++sel.served_grid;
    } else {
      sel.dropped.push_back(a->user_id);
    }
  };
  for (const AssociationOutcome* a : overflow) serve_from_grid(a);
  for (const AssociationOutcome* a : grid_queue) serve_from_grid(a);
  return sel;
}

}  // namespace greenassoc
