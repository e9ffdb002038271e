#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "greenassoc/power_density.hpp"

using namespace greenassoc;

namespace {

constexpr double kDelta = 0.5;

double direct_weighted(double a, const std::vector<double>& w, const std::vector<double>& thr, double p) {
  double s = 0.0;
  for (std::size_t l = 0; l < w.size(); ++l) s += w[l] * a * std::pow(std::min(p, thr[l]), kDelta);
  return s;
}

// integral over (0, p] of g(t) dOmega(t) exp(-Lambda(t)), split at breakpoints.
template <typename G>
double quadrature(double omega, const PowerLawDensity& lambda, double p, G&& g) {
  std::vector<double> cuts = {0.0};
  for (double b : lambda.breakpoints())
    if (b < p) cuts.push_back(b);
  cuts.push_back(p);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    // t = s^2 removes the t^(-1/2) endpoint singularity of dOmega.
    const double s0 = std::sqrt(cuts[i]);
    const double s1 = std::sqrt(cuts[i + 1]);
    total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [&](double s) {
          const double t = s * s;
          return g(t) * omega * kDelta * std::pow(t, kDelta - 1.0) * 2.0 * s * std::exp(-lambda(t));
        },
        s0, s1, 15, 1e-13);
  }
  return total;
}

}  // namespace

TEST(PowerLawDensity, PowerLaw) {
  const auto d = PowerLawDensity::power_law(3.0, kDelta);
  EXPECT_EQ(d(0.0), 0.0);
  EXPECT_NEAR(d(4.0), 6.0, 1e-14);
  EXPECT_NEAR((d * 2.0)(4.0), 12.0, 1e-14);
}

TEST(PowerLawDensity, BatteryWeightedMatchesDirectSum) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> w(12), thr(12);
    double sum = 0.0;
    for (std::size_t l = 0; l < w.size(); ++l) {
      w[l] = u(rng);
      sum += w[l];
      thr[l] = 10.0 * u(rng);
    }
    for (double& x : w) x /= sum;
    const auto d = PowerLawDensity::battery_weighted(1.7, kDelta, w, thr);
    for (double p : {0.0, 0.1, 1.0, 3.3, 7.0, 9.99, 20.0})
      EXPECT_NEAR(d(p), direct_weighted(1.7, w, thr, p), 1e-12);
    EXPECT_TRUE(d.is_nondecreasing());
  }
}

TEST(PowerLawDensity, AlgebraIsPointwise) {
  const std::vector<double> w = {0.2, 0.5, 0.3};
  const std::vector<double> thr = {0.0, 2.0, 5.0};
  const auto a = PowerLawDensity::battery_weighted(1.0, kDelta, w, thr);
  const auto b = PowerLawDensity::power_law(0.4, kDelta);
  for (double p : {0.0, 0.5, 1.9, 2.0, 2.1, 4.0, 6.0, 50.0}) {
    EXPECT_NEAR((a + b)(p), a(p) + b(p), 1e-13);
    EXPECT_NEAR((b - a.capped(3.0))(p), b(p) - a(std::min(p, 3.0)), 1e-13);
    EXPECT_NEAR(a.scaled(2.5)(p), a(2.5 * p), 1e-13);
    EXPECT_NEAR(a.capped(3.0)(p), a(std::min(p, 3.0)), 1e-13);
  }
}

TEST(VoidWeightedIntensity, MatchesQuadrature) {
  const std::vector<double> w = {0.1, 0.3, 0.4, 0.2};
  const std::vector<double> thr = {0.0, 0.8, 3.0, 12.0};
  const auto lambda = PowerLawDensity::battery_weighted(0.9, kDelta, w, thr) + PowerLawDensity::power_law(0.2, kDelta);
  const VoidWeightedIntensity f(1.3, lambda);
  for (double p : {0.3, 0.8, 2.0, 5.0, 12.0, 40.0}) {
    const double q0 = quadrature(1.3, lambda, p, [](double) { return 1.0; });
    const double q1 = quadrature(1.3, lambda, p, [](double t) { return t; });
    EXPECT_NEAR(f(p), q0, 1e-10 * std::max(1.0, q0)) << p;
    EXPECT_NEAR(f.first_moment(p), q1, 1e-9 * std::max(1.0, q1)) << p;
  }
}

TEST(VoidWeightedIntensity, InfiniteLimit) {
  const auto lambda = PowerLawDensity::power_law(2.0, kDelta);
  const VoidWeightedIntensity f(1.0, lambda);
  // With Omega = u and Lambda = 2u in u = t^delta: F(inf) = 1/2, moment = Gamma(3)/2^3.
  EXPECT_NEAR(f(std::numeric_limits<double>::infinity()), 0.5, 1e-14);
  EXPECT_NEAR(f.first_moment(std::numeric_limits<double>::infinity()), 2.0 / 8.0, 1e-12);
}

TEST(VoidWeightedIntensity, FrozenTailGrowsLinearly) {
  const std::vector<double> w = {1.0};
  const std::vector<double> thr = {4.0};
  const auto lambda = PowerLawDensity::battery_weighted(1.0, kDelta, w, thr);
  const VoidWeightedIntensity f(1.0, lambda);
  // Beyond the cap every user sees the same void probability exp(-2).
  EXPECT_NEAR(f(16.0) - f(4.0), (4.0 - 2.0) * std::exp(-2.0), 1e-13);
}
