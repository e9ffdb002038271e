#include "cli/validation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "greenassoc/analysis.hpp"
#include "greenassoc/battery_chain.hpp"
#include "greenassoc/config_io.hpp"
#include "greenassoc/radio.hpp"

namespace greenassoc::cli {

std::string_view to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
  }
  return "?";
}

namespace {

constexpr double kSigmaLimit = 3.0;
constexpr std::array<double, 5> kProbeFractions = {0.1, 0.25, 0.5, 0.75, 1.0};

SimRng seeded(std::uint64_t seed, std::uint64_t tag) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(tag)};
  return SimRng(seq);
}

CheckResult finish(CheckResult r) {
  if (r.status != CheckStatus::Skipped) r.status = r.deviation <= r.limit ? CheckStatus::Pass : CheckStatus::Fail;
  return r;
}

double poisson_term(double mean, int n) { return std::exp(-mean - std::lgamma(n + 1.0)) * std::pow(mean, n); }

// Exact total pmf by enumerating every count vector with sum q n_q <= max_total.
std::vector<double> enumerate_pmf(const std::vector<double>& atoms, int max_total) {
  std::vector<double> pmf(max_total + 1, 0.0);
  std::function<void(std::size_t, int, double)> rec = [&](std::size_t q, int total, double prob) {
    if (q == atoms.size()) {
      pmf[total] += prob;
      return;
    }
    const int size = static_cast<int>(q) + 1;
    for (int n = 0; total + n * size <= max_total; ++n)
      rec(q + 1, total + n * size, prob * poisson_term(atoms[q], n));
  };
  rec(0, 0, 1.0);
  return pmf;
}

/// One probe BS population in a disk around the origin user.
struct ProbePoint {
  double power_mw;
  int battery_units;
};

/// Realizations of one type's BSs within reach of `top_mw` (6 sigma of shadowing
/// beyond), batteries drawn from `v` when given.
template <typename Count>
void sample_disk(const NetworkConfig& config, BsType type, double top_mw, const Eigen::RowVectorXd* v, int realizations,
                 SimRng& rng, Count&& count) {
  const Radio radio(config);
  const double chi_max = std::pow(10.0, 6.0 * config.sigma_db / 10.0);
  const double r_max = std::pow(top_mw * chi_max / radio.p_rx_kappa(), 1.0 / config.alpha);
  const double mean_points = config.density(type) * std::numbers::pi * r_max * r_max;
  std::poisson_distribution<long> n_dist(mean_points);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::discrete_distribution<int> battery_dist;
  if (v) battery_dist = std::discrete_distribution<int>(v->data(), v->data() + v->size());
  std::vector<ProbePoint> points;
  for (int k = 0; k < realizations; ++k) {
    points.clear();
    const long n = n_dist(rng);
    for (long i = 0; i < n; ++i) {
      const double r = r_max * std::sqrt(unit(rng));
      const double chi = sample_shadowing(config.sigma_db, rng);
      const int l = v ? battery_dist(rng) : 0;
      points.push_back({radio.required_power(r, chi), l});
    }
    count(points);
  }
}

/// Compares mean counts over realizations with the formula at each probe.
struct ProbeTally {
  std::vector<double> probes;
  std::vector<double> totals;

  explicit ProbeTally(std::vector<double> p) : probes(std::move(p)), totals(probes.size(), 0.0) {}

  /// Largest |empirical - formula| / sqrt(formula / n) over probes with a positive formula.
  double worst_sigma(const std::function<double(double)>& formula, int n, std::ostringstream& detail) const {
    double worst = 0.0;
    for (std::size_t i = 0; i < probes.size(); ++i) {
      const double expected = formula(probes[i]);
      const double mean = totals[i] / n;
      detail << (i ? " " : "") << format_double(probes[i]) << "mW:" << format_double(mean) << "/"
             << format_double(expected);
      if (!(expected > 0.0)) {
        if (mean > 0.0) worst = std::numeric_limits<double>::infinity();
        continue;
      }
      worst = std::max(worst, std::abs(mean - expected) / std::sqrt(expected / n));
    }
    return worst;
  }
};

std::vector<double> probes_up_to(double top) {
  std::vector<double> p;
  for (double f : kProbeFractions) p.push_back(f * top);
  return p;
}

std::vector<BsType> populated(const NetworkConfig& config, bool with_battery) {
  std::vector<BsType> out;
  for (BsType t : {BsType::EH, BsType::HY, BsType::OG})
    if (config.density(t) > 0.0 && (!with_battery || has_battery(t))) out.push_back(t);
  return out;
}

double top_coverage(const NetworkConfig& config, BsType type) {
  return Radio(config).availability_load_inverse(config.battery(type).capacity_mw());
}

Eigen::RowVectorXd uniform_vector(const NetworkConfig& config, BsType type) {
  const int n = config.battery(type).capacity_units + 1;
  return Eigen::RowVectorXd::Constant(n, 1.0 / n);
}

/// Shared body of the thinning and scaled checks: available BSs with ratio * p <= probe.
CheckResult availability_check(const NetworkConfig& config, const ValidationOptions& options, std::string name,
                               double beta_a, double beta_g, std::uint64_t tag) {
  CheckResult r{std::move(name), CheckStatus::Pass, 0.0, kSigmaLimit, ""};
  const auto types = populated(config, true);
  if (types.empty()) {
    r.status = CheckStatus::Skipped;
    r.detail = "no harvesting BSs";
    return r;
  }
  const Radio radio(config);
  SimRng rng = seeded(options.seed, tag);
  std::ostringstream detail;
  for (BsType type : types) {
    const Eigen::RowVectorXd v = uniform_vector(config, type);
    const double unit = config.battery(type).unit_mw;
    const double ratio = beta_a / beta_g;
    ProbeTally tally(probes_up_to(ratio * top_coverage(config, type)));
    sample_disk(config, type, tally.probes.back() / ratio, &v, options.realizations, rng,
                [&](const std::vector<ProbePoint>& points) {
                  for (const ProbePoint& pt : points) {
                    if (!(radio.availability_load(pt.power_mw) <= pt.battery_units * unit)) continue;
                    for (std::size_t i = 0; i < tally.probes.size(); ++i)
                      if (ratio * pt.power_mw <= tally.probes[i]) tally.totals[i] += 1.0;
                  }
                });
    detail << (detail.tellp() > 0 ? "; " : "") << to_string(type) << " ";
    const double worst = tally.worst_sigma(
        [&](double t) { return density_scaled_available(t, type, v, beta_a, beta_g, config); }, options.realizations,
        detail);
    r.deviation = std::max(r.deviation, worst);
  }
  r.detail = detail.str();
  return finish(r);
}

}  // namespace

CheckResult check_panjer(const ValidationOptions& options) {
  CheckResult r{"panjer", CheckStatus::Pass, 0.0, 1e-12, ""};
  SimRng rng = seeded(options.seed, 1);
  std::uniform_int_distribution<int> n_atoms(1, 4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  constexpr int kMaxTotal = 16;
  for (int c = 0; c < options.panjer_cases; ++c) {
    std::vector<double> atoms(n_atoms(rng));
    for (double& a : atoms) a = unit(rng);
    const std::vector<double> recursive = compound_poisson_pmf(atoms, kMaxTotal);
    const std::vector<double> exact = enumerate_pmf(atoms, kMaxTotal);
    for (int m = 0; m <= kMaxTotal; ++m) r.deviation = std::max(r.deviation, std::abs(recursive[m] - exact[m]));
  }
  r.detail = std::to_string(options.panjer_cases) + " cases, totals 0.." + std::to_string(kMaxTotal);
  return finish(r);
}

CheckResult check_displacement(const NetworkConfig& config, const ValidationOptions& options) {
  CheckResult r{"displacement", CheckStatus::Pass, 0.0, kSigmaLimit, ""};
  const auto types = populated(config, false);
  if (types.empty()) {
    r.status = CheckStatus::Skipped;
    r.detail = "no BSs";
    return r;
  }
  const Radio radio(config);
  const double extra = options.debug_double_prx ? std::pow(1.0 / radio.p_rx_kappa(), radio.delta()) : 1.0;
  SimRng rng = seeded(options.seed, 2);
  std::ostringstream detail;
  for (BsType type : types) {
    ProbeTally tally(probes_up_to(config.p_tx_max_mw));
    sample_disk(config, type, config.p_tx_max_mw, nullptr, options.realizations, rng,
                [&](const std::vector<ProbePoint>& points) {
                  for (const ProbePoint& pt : points)
                    for (std::size_t i = 0; i < tally.probes.size(); ++i)
                      if (pt.power_mw <= tally.probes[i]) tally.totals[i] += 1.0;
                });
    detail << (detail.tellp() > 0 ? "; " : "") << to_string(type) << " ";
    const double worst = tally.worst_sigma([&](double p) { return extra * density_bs(p, type, config); },
                                           options.realizations, detail);
    r.deviation = std::max(r.deviation, worst);
  }
  r.detail = detail.str();
  return finish(r);
}

CheckResult check_thinning(const NetworkConfig& config, const ValidationOptions& options) {
  return availability_check(config, options, "thinning", 1.0, 1.0, 3);
}

CheckResult check_scaled(const NetworkConfig& config, const ValidationOptions& options) {
  return availability_check(config, options, "scaled", 2.0, 1.0, 4);
}

CheckResult check_stationarity(const NetworkConfig& config, const ValidationOptions& options) {
  CheckResult r{"stationarity", CheckStatus::Pass, 0.0, 1e-9, ""};
  std::ostringstream detail;
  double row_error = 0.0;
  for (const Scheme& scheme : {Scheme::no_bias(), Scheme::from_config(Scheme::Kind::AdaptiveBias, config),
                               Scheme::from_config(Scheme::Kind::FixedBias, config)}) {
    try {
      const Equilibrium eq = solve(config, scheme, options.solver);
      r.deviation = std::max(r.deviation, eq.stationarity_residual);
      row_error = std::max({row_error, max_row_sum_error(eq.transition_eh), max_row_sum_error(eq.transition_hy)});
      detail << (detail.tellp() > 0 ? " " : "") << scheme.name() << ":" << format_double(eq.stationarity_residual);
    } catch (const ConvergenceError& e) {
      r.status = CheckStatus::Fail;
      r.deviation = std::numeric_limits<double>::infinity();
      detail << (detail.tellp() > 0 ? " " : "") << scheme.name() << ":" << e.what();
    }
  }
  detail << " max row-sum error " << format_double(row_error);
  r.detail = detail.str();
  if (r.status == CheckStatus::Fail) return r;
  r = finish(r);
  if (row_error > 1e-10) r.status = CheckStatus::Fail;
  return r;
}

CheckResult check_cross_engine(const NetworkConfig& config, const ValidationOptions& options) {
  CheckResult r{"cross_engine", CheckStatus::Pass, 0.0, 0.10, ""};
  const Scheme scheme = Scheme::from_config(Scheme::Kind::AdaptiveBias, config);
  MetricsReport analytic;
  try {
    analytic = analyze(config, scheme, options.solver);
  } catch (const ConvergenceError& e) {
    r.status = CheckStatus::Fail;
    r.detail = e.what();
    return r;
  }
  const MetricsReport sim = estimate(config, scheme, options.simulation);
  std::ostringstream detail;
  bool compared = false;
  const auto relative = [&](const char* what, double a, double s) {
    detail << (compared ? " " : "") << what << " analytic " << format_double(a) << " sim " << format_double(s);
    compared = true;
    if (s == 0.0) return a == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return std::abs(a - s) / std::abs(s);
  };
  if (analytic.outage_prob && sim.outage_prob)
    r.deviation = std::max(r.deviation, relative("outage", *analytic.outage_prob, *sim.outage_prob));
  if (analytic.grid_power_total_mw > 0.0 || sim.grid_power_total_mw > 0.0)
    r.deviation = std::max(r.deviation, relative("grid_mw", analytic.grid_power_total_mw, sim.grid_power_total_mw));
  if (!compared) {
    r.status = CheckStatus::Skipped;
    r.detail = "no users and no grid power";
    return r;
  }
  r.detail = detail.str();
  return finish(r);
}

std::vector<CheckResult> run_validation(const NetworkConfig& config, const ValidationOptions& options) {
  std::vector<CheckResult> out;
  out.push_back(check_panjer(options));
  out.push_back(check_displacement(config, options));
  out.push_back(check_thinning(config, options));
  out.push_back(check_scaled(config, options));
  out.push_back(check_stationarity(config, options));
  if (options.cross_engine) {
    out.push_back(check_cross_engine(config, options));
  } else {
    out.push_back({"cross_engine", CheckStatus::Skipped, 0.0, 0.10, "disabled"});
  }
  return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::none_of(results.begin(), results.end(), [](const CheckResult& r) { return r.status == CheckStatus::Fail; });
}

void write_report(std::ostream& out, const std::vector<CheckResult>& results) {
  out << "check,status,deviation,limit,detail\n";
  for (const CheckResult& r : results) {
    std::string detail = r.detail;
    std::replace(detail.begin(), detail.end(), '"', '\'');
    out << r.name << ',' << to_string(r.status) << ',' << format_double(r.deviation) << ',' << format_double(r.limit)
        << ",\"" << detail << "\"\n";
  }
}

}  // namespace greenassoc::cli
