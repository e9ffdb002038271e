#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "greenassoc/config.hpp"
#include "greenassoc/radio.hpp"

namespace greenassoc {

enum class SetTag { Available, Grid, Excluded };
enum class Supply { Renewable, Grid, Outage };

std::string_view to_string(SetTag tag);
std::string_view to_string(Supply supply);

/// How a hybrid BS splits its associated users between battery and grid.
enum class HyService {
  /// Each user is served from the supply it announced; renewable users the
  /// battery cannot cover fall back to the grid.
  AnnouncedSupply,
  /// Battery first in ascending power order, grid once units run out.
  BatteryFirst,
};

/// Association policy.
///
/// AdaptiveBias weighs a BS by beta_a when it is available to the user and by
/// beta_g when it would serve from the grid; FixedBias weighs by BS type;
/// NoBias is FixedBias with unit weights; BestCA pretends every battery is full
/// and uses unit weights.
class Scheme {
 public:
  enum class Kind { AdaptiveBias, FixedBias, NoBias, BestCA };

  static Scheme adaptive(double beta_a, double beta_g);
  static Scheme fixed(double beta_eh, double beta_hy, double beta_og);
  static Scheme no_bias();
  static Scheme best();
  /// Scheme of the given kind with the biases stored in `config`.
  static Scheme from_config(Kind kind, const NetworkConfig& config);

  static std::optional<Kind> parse_kind(std::string_view name);
  static std::string_view name(Kind kind);

  Kind kind() const { return kind_; }
  std::string_view name() const { return name(kind_); }

  double beta_a() const { return beta_a_; }
  double beta_g() const { return beta_g_; }
  double tier_bias(BsType type) const;

  bool assumes_full_batteries() const { return kind_ == Kind::BestCA; }
  /// True for schemes whose weight depends on the announced supply.
  bool weighs_by_supply() const { return kind_ == Kind::AdaptiveBias || kind_ == Kind::BestCA; }
  HyService hy_service() const {
    return weighs_by_supply() ? HyService::AnnouncedSupply : HyService::BatteryFirst;
  }

  bool operator==(const Scheme&) const = default;

 private:
  Scheme(Kind kind, double a, double g, double eh, double hy, double og);

  Kind kind_;
  double beta_a_ = 1.0;
  double beta_g_ = 1.0;
  double beta_eh_ = 1.0;
  double beta_hy_ = 1.0;
  double beta_og_ = 1.0;
};

/// One user-to-BS link as seen at the start of a slot.
struct BsLink {
  int bs_id = 0;
  BsType type = BsType::EH;
  /// Broadcast battery level; ignored for OG.
  int battery_units = 0;
  double required_power_mw = 0.0;
};

struct CandidateBs {
  int bs_id = 0;
  BsType type = BsType::EH;
  std::optional<int> battery_units;
  double required_power_mw = 0.0;
  SetTag tag = SetTag::Excluded;
};

struct AssociationOutcome {
  int user_id = 0;
  std::optional<int> chosen_bs;
  BsType chosen_type = BsType::EH;
  Supply supply = Supply::Outage;
  double required_power_mw = 0.0;
  double biased_power_mw = 0.0;
};

/// Tags every link Available, Grid or Excluded.
///
/// Available: EH/HY with availability_load(p) <= l * epsilon.
/// Grid: OG with p <= P_max, HY not available with p <= P_max.
/// Everything else, including EH that is not available, is Excluded.
/// `assume_full` evaluates EH/HY at capacity instead of the broadcast level.
std::vector<CandidateBs> partition(std::span<const BsLink> links, const NetworkConfig& config,
                                   bool assume_full = false);
void partition(std::span<const BsLink> links, const NetworkConfig& config, const Radio& radio,
               bool assume_full, std::vector<CandidateBs>& out);

/// Picks the serving BS. Ties go to renewable supply, then to the lowest bs_id.
/// No Available/Grid candidate yields an Outage outcome.
AssociationOutcome choose(std::span<const CandidateBs> candidates, const Scheme& scheme, int user_id = 0);

struct ServedUser {
  int user_id = 0;
  Supply source = Supply::Renewable;
  double power_mw = 0.0;
  int units = 0;
};

struct Selection {
  std::vector<ServedUser> served;
  std::vector<int> dropped;
  int battery_units_drawn = 0;
  double grid_mw = 0.0;
  int served_renewable = 0;
  int served_grid = 0;
};

/// Battery units a demand of p costs, ceil(p / epsilon).
int units_for(double p_mw, double unit_mw);

/// Serves the users associated with one BS holding `battery_units` at slot start.
///
/// Battery-served users are taken in ascending power order, each costing
/// ceil(p/epsilon) units, until the next one does not fit. EH drops the rest;
/// HY moves them to the grid when p <= P_max. The battery draw never exceeds
/// `battery_units` and EH never draws grid power.
Selection select_users(BsType type, std::span<const AssociationOutcome> associated, int battery_units,
                       const NetworkConfig& config, HyService service);

}  // namespace greenassoc
