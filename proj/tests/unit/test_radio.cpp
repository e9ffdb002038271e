#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "greenassoc/radio.hpp"

using namespace greenassoc;

namespace {

NetworkConfig unit_rx() {
  NetworkConfig c = NetworkConfig::defaults();
  c.p_rx_dbm = 0.0;
  c.kappa = 1.0;
  c.alpha = 4.0;
  return c;
}

}  // namespace

TEST(RequiredPower, UnitDistanceIsReceiveFloor) {
  NetworkConfig c = NetworkConfig::defaults();
  for (double alpha : {2.5, 3.0, 4.0, 5.5}) {
    c.alpha = alpha;
    EXPECT_NEAR(required_power({1.0, 1.0}, c), 3.16228e-7, 1e-12);
  }
}

TEST(RequiredPower, TenMetres) {
  EXPECT_NEAR(required_power({10.0, 1.0}, NetworkConfig::defaults()), 3.16228e-3, 1e-8);
}

TEST(RequiredPower, ShadowingDivides) {
  const NetworkConfig c = NetworkConfig::defaults();
  EXPECT_DOUBLE_EQ(required_power({37.0, 2.0}, c), 0.5 * required_power({37.0, 1.0}, c));
  EXPECT_THROW(required_power({1.0, 0.0}, c), std::invalid_argument);
}

TEST(Upsilon, NoShadowing) {
  NetworkConfig c = unit_rx();
  c.sigma_db = 0.0;
  EXPECT_NEAR(upsilon(c), std::numbers::pi, 1e-14);
}

TEST(Upsilon, ShadowingMatchesLogNormalMoment) {
  NetworkConfig c = unit_rx();
  c.sigma_db = 4.0;
  EXPECT_NEAR(upsilon(c), 3.4931, 5e-4);

  // pi * E[chi^(2/alpha)] with chi = 10^(X/10), X ~ N(0, 4^2).
  std::mt19937_64 rng(11);
  std::normal_distribution<double> x(0.0, 4.0);
  const int n = 1'000'000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += std::sqrt(std::pow(10.0, x(rng) / 10.0));
  EXPECT_NEAR(upsilon(c), std::numbers::pi * sum / n, 0.005 * upsilon(c));
}

TEST(Upsilon, KappaScaling) {
  NetworkConfig c = NetworkConfig::defaults();
  for (double alpha : {3.0, 4.0}) {
    c.alpha = alpha;
    c.kappa = 1.0;
    const double base = upsilon(c);
    c.kappa = 2.0;
    EXPECT_NEAR(upsilon(c) / base, std::pow(2.0, -2.0 / alpha), 1e-13);
  }
}

TEST(OtherUsersEstimate, ZeroPower) { EXPECT_EQ(other_users_estimate(0.0, NetworkConfig::defaults()), 0.0); }

TEST(OtherUsersEstimate, UnitCoefficient) {
  NetworkConfig c = unit_rx();
  c.sigma_db = 0.0;
  c.omega = 3.0 / std::numbers::pi;  // omega * upsilon = 3
  for (double p : {0.01, 0.5, 2.0, 17.0}) EXPECT_NEAR(other_users_estimate(p, c), std::pow(p, 1.5), 1e-12 * p * p);
}

TEST(OtherUsersEstimate, MatchesQuadrature) {
  for (double alpha : {4.0, 3.0}) {
    NetworkConfig c = NetworkConfig::defaults();
    c.alpha = alpha;
    const double delta = 2.0 / alpha;
    const double coef = c.omega * upsilon(c);
    // integral of t dOmega(t), dOmega = coef * delta * t^(delta - 1) dt.
    const double p = 1e-3;
    const double q = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [&](double t) { return coef * delta * std::pow(t, delta); }, 0.0, p, 10, 1e-14);
    EXPECT_NEAR(other_users_estimate(p, c), q, 1e-10 * q);
  }
}

TEST(AvailabilityLoad, InverseRoundTrip) {
  const NetworkConfig c = NetworkConfig::defaults();
  const Radio radio(c);
  for (double load : {1e-6, 0.75, 37.0, 750.0, 1e5}) {
    const double p = radio.availability_load_inverse(load);
    EXPECT_NEAR(radio.availability_load(p), load, 1e-12 * load);
  }
}

TEST(Shadowing, DegenerateWithoutSpread) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(sample_shadowing(0.0, rng), 1.0);
}

TEST(Shadowing, MomentAndMedian) {
  std::mt19937_64 rng(5);
  const int n = 1'000'000;
  std::vector<double> draws(n);
  double sum = 0.0;
  for (double& d : draws) {
    d = sample_shadowing(4.0, rng);
    sum += std::sqrt(d);
  }
  const double s = 0.5 / kZeta;
  const double expected = std::exp(0.5 * s * s * 16.0);
  EXPECT_NEAR(expected, 1.1118, 1e-4);
  EXPECT_NEAR(sum / n, expected, 0.01 * expected);
  std::nth_element(draws.begin(), draws.begin() + n / 2, draws.end());
  // Median of 10^(X/10): sd of the sample median of X is about 1.2533 * 4 / sqrt(n).
  EXPECT_NEAR(10.0 * std::log10(draws[n / 2]), 0.0, 3.0 * 1.2533 * 4.0 / std::sqrt(n) + 1e-3);
}
