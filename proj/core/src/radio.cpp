#include "greenassoc/radio.hpp"

#include <cmath>
#include <stdexcept>

namespace greenassoc {

Radio::Radio(const NetworkConfig& config)
    : alpha_(config.alpha),
      delta_(2.0 / config.alpha),
      p_rx_kappa_(config.p_rx_mw() * config.kappa) {
  if (!(config.alpha > 2.0)) throw std::invalid_argument("alpha must exceed 2");
  const double s = delta_ / kZeta;
  // Zero-mean shadowing: the mu term of the exponent vanishes.
  upsilon_ = std::numbers::pi * std::pow(1.0 / p_rx_kappa_, delta_) *
             std::exp(0.5 * s * s * config.sigma_db * config.sigma_db);
  estimate_coef_ = config.omega * upsilon_ * delta_ / (delta_ + 1.0);
}

double Radio::required_power(double distance_m, double shadowing_linear) const {
  if (distance_m <= 0.0) return 0.0;
  return p_rx_kappa_ * std::pow(distance_m, alpha_) / shadowing_linear;
}

double Radio::required_power(const LinkGain& link) const {
  return required_power(link.distance_m, link.shadowing_linear);
}

double Radio::other_users_estimate(double p_mw) const {
  if (p_mw <= 0.0) return 0.0;
  // alpha = 4 is the common case and sits on the simulator's hot path.
  if (alpha_ == 4.0) return estimate_coef_ * p_mw * std::sqrt(p_mw);
  return estimate_coef_ * std::pow(p_mw, delta_ + 1.0);
}

double Radio::availability_load_inverse(double load_mw) const {
  if (load_mw <= 0.0) return 0.0;
  if (estimate_coef_ == 0.0) return load_mw;

  // g is convex and increasing on [0, inf): Newton from the right converges
  // monotonically; the bracket keeps it there.
  double lo = 0.0;
  // g(p) >= p and g(p) >= c p^(delta+1) bound the root from above.
  double hi = std::min(load_mw, std::pow(load_mw / estimate_coef_, 1.0 / (delta_ + 1.0)));
  double p = hi;
  for (int it = 0; it < 200; ++it) {
    const double f = availability_load(p) - load_mw;
    if (f == 0.0) return p;
    if (f > 0.0) hi = p; else lo = p;
    const double df = 1.0 + estimate_coef_ * (delta_ + 1.0) * std::pow(p, delta_);
    double next = p - f / df;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - p) <= 1e-15 * std::max(next, 1e-300)) return next;
    p = next;
    if (hi - lo <= 1e-15 * hi) break;
  }
  return p;
}

double Radio::power_domain_intensity(double planar_density, double p_mw) const {
  if (p_mw <= 0.0 || planar_density <= 0.0) return 0.0;
  return planar_density * upsilon_ * std::pow(p_mw, delta_);
}

double required_power(const LinkGain& link, const NetworkConfig& config) {
  if (!(link.shadowing_linear > 0.0)) throw std::invalid_argument("shadowing must be positive");
  return Radio(config).required_power(link);
}

double upsilon(const NetworkConfig& config) { return Radio(config).upsilon(); }

double other_users_estimate(double p_mw, const NetworkConfig& config) {
  return Radio(config).other_users_estimate(p_mw);
}

}  // namespace greenassoc
