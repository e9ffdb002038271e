#pragma once

#include <numbers>
#include <random>

#include "greenassoc/config.hpp"

namespace greenassoc {

/// dB-to-neper scale of the log-normal shadowing, 10 / ln 10.
inline constexpr double kZeta = 10.0 / std::numbers::ln10;

struct LinkGain {
  double distance_m = 0.0;
  double shadowing_linear = 1.0;
};

/// Channel constants of one scenario, computed once.
///
/// The power-domain intensity of a planar PPP of density lambda is
/// lambda * upsilon() * p^(2/alpha): upsilon() already carries the
/// (P_Rx kappa)^(-2/alpha) factor, so it must not be applied a second time.
class Radio {
 public:
  explicit Radio(const NetworkConfig& config);

  /// P_Rx * kappa * r^alpha / chi, in mW. r = 0 gives 0.
  double required_power(const LinkGain& link) const;
  double required_power(double distance_m, double shadowing_linear) const;

  double upsilon() const { return upsilon_; }
  /// 2 / alpha.
  double delta() const { return delta_; }

  /// Expected power drawn by users closer (in power) than p at the same BS:
  /// omega * upsilon * delta / (delta + 1) * p^(delta + 1).
  double other_users_estimate(double p_mw) const;

  /// p plus the other-users estimate; the load a user tests against l * epsilon.
  double availability_load(double p_mw) const { return p_mw + other_users_estimate(p_mw); }

  /// Inverse of availability_load by safeguarded Newton iteration, 1e-12 relative.
  double availability_load_inverse(double load_mw) const;

  /// Cumulative power-domain intensity of a PPP of the given planar density.
  double power_domain_intensity(double planar_density, double p_mw) const;

  double p_rx_kappa() const { return p_rx_kappa_; }
  double estimate_coefficient() const { return estimate_coef_; }

 private:
  double alpha_;
  double delta_;
  double p_rx_kappa_;
  double upsilon_;
  double estimate_coef_;
};

double required_power(const LinkGain& link, const NetworkConfig& config);
double upsilon(const NetworkConfig& config);
double other_users_estimate(double p_mw, const NetworkConfig& config);

/// chi = 10^(X/10) with X ~ Normal(0, sigma_db^2).
template <typename Rng>
double sample_shadowing(double sigma_db, Rng& rng) {
  if (sigma_db <= 0.0) return 1.0;
  std::normal_distribution<double> normal(0.0, sigma_db);
  return std::pow(10.0, normal(rng) / 10.0);
}

}  // namespace greenassoc
