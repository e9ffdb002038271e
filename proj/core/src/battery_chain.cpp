#include "greenassoc/battery_chain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace greenassoc {

std::vector<std::pair<int, double>> HarvestPmf::atoms() const {
  std::vector<std::pair<int, double>> out;
  for (int m = 0; m < static_cast<int>(prob.size()); ++m)
    if (prob[m] > 0.0) out.emplace_back(m, prob[m]);
  return out;
}

double HarvestPmf::mean() const {
  double s = 0.0;
  for (int m = 0; m < static_cast<int>(prob.size()); ++m) s += m * prob[m];
  return s;
}

HarvestPmf harvest_pmf(const HarvestSpec& spec, int cap_units) {
  if (cap_units < 0) throw std::invalid_argument("harvest cap must be non-negative");
  HarvestPmf pmf;
  pmf.prob.assign(static_cast<std::size_t>(cap_units) + 1, 0.0);
  const double rate = spec.burst_rate();
  if (rate <= 0.0) {
    pmf.prob[0] = 1.0;
    return pmf;
  }

  const double log_rate = std::log(rate);
  double below = 0.0;
  for (long k = 0; k * spec.burst_units < cap_units; ++k) {
    const double p = std::exp(-rate + k * log_rate - std::lgamma(static_cast<double>(k) + 1.0));
    if (k > rate && p == 0.0) break;
    pmf.prob[static_cast<std::size_t>(k * spec.burst_units)] += p;
    below += p;
  }
  // The last entry carries P(H >= cap), so the pmf sums to one exactly.
  pmf.prob[static_cast<std::size_t>(cap_units)] += std::max(0.0, 1.0 - below);
  return pmf;
}

int harvest_truncation_bound(const HarvestSpec& spec, int capacity_units) {
  const double ten_mean = std::ceil(10.0 * spec.mean_units_per_slot);
  return static_cast<int>(std::max(ten_mean, 2.0 * capacity_units));
}

std::vector<double> demand_atoms(const std::function<double(double)>& omega, double cap_mw, double unit_mw) {
  std::vector<double> atoms;
  if (!(cap_mw > 0.0)) return atoms;
  const int q_max = static_cast<int>(std::ceil(cap_mw / unit_mw - 1e-12));
  atoms.reserve(static_cast<std::size_t>(q_max));
  double previous = omega(0.0);
  for (int q = 1; q <= q_max; ++q) {
    const double current = omega(std::min(q * unit_mw, cap_mw));
    atoms.push_back(std::max(current - previous, 0.0));
    previous = current;
  }
  return atoms;
}

std::pair<std::vector<double>, double> compound_poisson_pmf_scaled(std::span<const double> atoms, int max_total) {
  std::vector<double> p(static_cast<std::size_t>(std::max(max_total, 0)) + 1, 0.0);
  const double total = std::accumulate(atoms.begin(), atoms.end(), 0.0);
  double log_scale = 0.0;
  if (total < 700.0) {
    p[0] = std::exp(-total);
  } else {
    p[0] = 1.0;
    log_scale = -total;
  }

  // q * atoms[q-1] is reused for every m.
  std::vector<double> weighted(atoms.size());
  for (std::size_t q = 1; q <= atoms.size(); ++q) weighted[q - 1] = static_cast<double>(q) * atoms[q - 1];

  constexpr double kRescaleAbove = 1e250;
  const double log_rescale = std::log(kRescaleAbove);
  const int q_max = static_cast<int>(atoms.size());
  for (int m = 1; m <= max_total; ++m) {
    const int upper = std::min(m, q_max);
    double s = 0.0;
    for (int q = 1; q <= upper; ++q) s += weighted[q - 1] * p[m - q];
    p[m] = s / m;
    if (p[m] > kRescaleAbove) {
      for (int k = 0; k <= m; ++k) p[k] /= kRescaleAbove;
      log_scale += log_rescale;
    }
  }
  return {std::move(p), log_scale};
}

std::vector<double> compound_poisson_pmf(std::span<const double> atoms, int max_total) {
  auto [p, log_scale] = compound_poisson_pmf_scaled(atoms, max_total);
  if (log_scale != 0.0) {
    for (double& x : p) x = x > 0.0 ? std::exp(std::log(x) + log_scale) : 0.0;
  }
  return p;
}

std::vector<double> consumption_row(std::span<const double> atoms, int l, ConsumptionNormalization norm) {
  if (l < 0) throw std::invalid_argument("battery state must be non-negative");
  std::vector<double> row(static_cast<std::size_t>(l) + 1, 0.0);
  if (l == 0) {
    row[0] = 1.0;
    return row;
  }
  auto [p, log_scale] = compound_poisson_pmf_scaled(atoms, l);
  (void)log_scale;
  const int first = norm == ConsumptionNormalization::Verbatim ? 1 : 0;
  double sum = 0.0;
  for (int m = first; m <= l; ++m) sum += p[m];
  if (!(sum > 0.0)) {
    row[0] = 1.0;
    return row;
  }
  for (int m = first; m <= l; ++m) row[m] = p[m] / sum;
  return row;
}

std::vector<double> total_consumption_pmf(const std::function<double(double)>& omega, int l, double cap_mw,
                                          const BatterySpec& battery, ConsumptionNormalization norm) {
  const auto atoms = demand_atoms(omega, cap_mw, battery.unit_mw);
  return consumption_row(atoms, l, norm);
}

double row_mean(std::span<const double> row) {
  double s = 0.0;
  for (std::size_t m = 0; m < row.size(); ++m) s += static_cast<double>(m) * row[m];
  return s;
}

Eigen::MatrixXd transition_matrix(const ConsumptionTable& consumption, const HarvestPmf& harvest, int capacity) {
  if (static_cast<int>(consumption.size()) != capacity + 1)
    throw std::invalid_argument("consumption table must have capacity + 1 rows");
  const auto atoms = harvest.atoms();
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(capacity + 1, capacity + 1);
  for (int l = 0; l <= capacity; ++l) {
    const auto& row = consumption[static_cast<std::size_t>(l)];
    for (int m = 0; m < static_cast<int>(row.size()) && m <= l; ++m) {
      const double pt = row[static_cast<std::size_t>(m)];
      if (pt == 0.0) continue;
      const int base = l - m;
      for (const auto& [h, ph] : atoms) P(l, std::min(capacity, base + h)) += pt * ph;
    }
  }
  return P;
}

double stationarity_residual(const Eigen::RowVectorXd& v, const Eigen::MatrixXd& P) {
  const Eigen::RowVectorXd next = v * P;
  return (next - v).lpNorm<1>();
}

double max_row_sum_error(const Eigen::MatrixXd& P) {
  return (P.rowwise().sum().array() - 1.0).abs().maxCoeff();
}

StationaryResult stationary(const Eigen::MatrixXd& P, const StationaryOptions& options) {
  const Eigen::Index n = P.rows();
  if (n == 0 || P.cols() != n) throw std::invalid_argument("transition matrix must be square and non-empty");

  StationaryResult result;
  Eigen::RowVectorXd v = options.start ? *options.start : Eigen::RowVectorXd::Constant(n, 1.0 / static_cast<double>(n));
  if (v.size() != n) throw std::invalid_argument("start vector has the wrong size");
  v /= v.sum();

  Eigen::RowVectorXd next(n);
  for (int it = 1; it <= options.max_iter; ++it) {
    next.noalias() = v * P;
    next /= next.sum();
    const double step = (next - v).lpNorm<1>();
    v.swap(next);
    result.iterations = it;
    if (step < options.tol) {
      result.converged = true;
      break;
    }
  }
  result.residual = stationarity_residual(v, P);
  result.v = std::move(v);
  if (options.max_iter <= 0) result.converged = result.residual < options.tol;
  return result;
}

}  // namespace greenassoc
