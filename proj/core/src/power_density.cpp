#include "greenassoc/power_density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace greenassoc {

PowerLawDensity::PowerLawDensity(double exponent) : exponent_(exponent), pieces_{Piece{}} {
  if (!(exponent > 0.0)) throw std::invalid_argument("density exponent must be positive");
}

PowerLawDensity::PowerLawDensity(double exponent, std::vector<Piece> pieces)
    : exponent_(exponent), pieces_(std::move(pieces)) {
  if (pieces_.empty()) pieces_.push_back(Piece{});
  merge_equal_pieces();
}

PowerLawDensity PowerLawDensity::power_law(double a, double exponent) {
  PowerLawDensity d(exponent);
  d.pieces_[0].coef = a;
  return d;
}

PowerLawDensity PowerLawDensity::battery_weighted(double a, double exponent, std::span<const double> weights,
                                                  std::span<const double> thresholds) {
  if (weights.size() != thresholds.size()) throw std::invalid_argument("weights and thresholds differ in size");
  std::vector<std::pair<double, double>> items;
  items.reserve(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] == 0.0 || !(thresholds[i] > 0.0)) continue;
    items.emplace_back(thresholds[i], weights[i]);
  }
  std::sort(items.begin(), items.end());

  // suffix[k] = total weight of thresholds at or beyond items[k].
  std::vector<double> suffix(items.size() + 1, 0.0);
  for (std::size_t k = items.size(); k-- > 0;) suffix[k] = suffix[k + 1] + items[k].second;

  std::vector<Piece> pieces;
  pieces.reserve(items.size() + 1);
  pieces.push_back({0.0, 0.0, a * suffix[0]});
  double offset = 0.0;
  std::size_t k = 0;
  while (k < items.size()) {
    const double t = items[k].first;
    if (std::isinf(t)) break;
    const double tp = std::pow(t, exponent);
    while (k < items.size() && items[k].first == t) {
      offset += a * items[k].second * tp;
      ++k;
    }
    pieces.push_back({t, offset, a * suffix[k]});
  }
  return PowerLawDensity(exponent, std::move(pieces));
}

std::size_t PowerLawDensity::piece_index(double p) const {
  // Last piece whose start is strictly below p.
  auto it = std::lower_bound(pieces_.begin(), pieces_.end(), p,
                             [](const Piece& piece, double x) { return piece.start < x; });
  return it == pieces_.begin() ? 0 : static_cast<std::size_t>(it - pieces_.begin()) - 1;
}

double PowerLawDensity::operator()(double p) const {
  if (!(p > 0.0)) return 0.0;
  const Piece& piece = pieces_[piece_index(p)];
  if (piece.coef == 0.0) return piece.offset;
  if (std::isinf(p)) return piece.coef > 0.0 ? std::numeric_limits<double>::infinity() : piece.offset;
  return piece.offset + piece.coef * std::pow(p, exponent_);
}

std::vector<double> PowerLawDensity::breakpoints() const {
  std::vector<double> out;
  for (std::size_t i = 1; i < pieces_.size(); ++i) out.push_back(pieces_[i].start);
  return out;
}

PowerLawDensity PowerLawDensity::scaled(double s) const {
  if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("scale must be positive");
  std::vector<Piece> out = pieces_;
  const double factor = std::pow(s, exponent_);
  for (Piece& piece : out) {
    piece.start /= s;
    piece.coef *= factor;
  }
  return PowerLawDensity(exponent_, std::move(out));
}

PowerLawDensity PowerLawDensity::capped(double cap) const {
  if (!(cap > 0.0)) return PowerLawDensity(exponent_);
  if (std::isinf(cap)) return *this;
  std::vector<Piece> out;
  for (const Piece& piece : pieces_) {
    if (piece.start >= cap) break;
    out.push_back(piece);
  }
  out.push_back({cap, (*this)(cap), 0.0});
  return PowerLawDensity(exponent_, std::move(out));
}

PowerLawDensity PowerLawDensity::operator+(const PowerLawDensity& other) const {
  if (other.exponent_ != exponent_) throw std::invalid_argument("densities have different exponents");
  std::vector<double> starts;
  starts.reserve(pieces_.size() + other.pieces_.size());
  for (const Piece& p : pieces_) starts.push_back(p.start);
  for (const Piece& p : other.pieces_) starts.push_back(p.start);
  std::sort(starts.begin(), starts.end());
  starts.erase(std::unique(starts.begin(), starts.end()), starts.end());

  std::vector<Piece> out;
  out.reserve(starts.size());
  std::size_t i = 0;
  std::size_t j = 0;
  for (double s : starts) {
    while (i + 1 < pieces_.size() && pieces_[i + 1].start <= s) ++i;
    while (j + 1 < other.pieces_.size() && other.pieces_[j + 1].start <= s) ++j;
    out.push_back({s, pieces_[i].offset + other.pieces_[j].offset, pieces_[i].coef + other.pieces_[j].coef});
  }
  return PowerLawDensity(exponent_, std::move(out));
}

PowerLawDensity PowerLawDensity::operator*(double factor) const {
  std::vector<Piece> out = pieces_;
  for (Piece& piece : out) {
    piece.offset *= factor;
    piece.coef *= factor;
  }
  return PowerLawDensity(exponent_, std::move(out));
}

PowerLawDensity PowerLawDensity::operator-(const PowerLawDensity& other) const { return *this + other * -1.0; }

void PowerLawDensity::merge_equal_pieces() {
  std::vector<Piece> merged;
  merged.reserve(pieces_.size());
  for (const Piece& piece : pieces_) {
    if (!merged.empty() && merged.back().coef == piece.coef && merged.back().offset == piece.offset) continue;
    if (!merged.empty() && merged.back().start == piece.start) {
      merged.back() = piece;
      continue;
    }
    merged.push_back(piece);
  }
  pieces_ = std::move(merged);
}

bool PowerLawDensity::is_nondecreasing(double tol) const {
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (pieces_[i].coef < -tol) return false;
    if (i > 0) {
      const Piece& prev = pieces_[i - 1];
      const double s = pieces_[i].start;
      const double left = prev.offset + prev.coef * std::pow(s, exponent_);
      const double right = pieces_[i].offset + pieces_[i].coef * std::pow(s, exponent_);
      if (right < left - tol * (1.0 + std::abs(left))) return false;
    }
  }
  return true;
}

VoidWeightedIntensity::VoidWeightedIntensity(double omega_coef, PowerLawDensity lambda)
    : omega_coef_(omega_coef), lambda_(std::move(lambda)) {
  const auto& pieces = lambda_.pieces();
  const double d = lambda_.exponent();
  cumulative_.assign(pieces.size(), 0.0);
  cumulative_moment_.assign(pieces.size(), 0.0);
  for (std::size_t i = 1; i < pieces.size(); ++i) {
    const double u0 = std::pow(pieces[i - 1].start, d);
    const double u1 = std::pow(pieces[i].start, d);
    cumulative_[i] = cumulative_[i - 1] + piece_integral(i - 1, u0, u1);
    cumulative_moment_[i] = cumulative_moment_[i - 1] + piece_moment(i - 1, u0, u1);
  }
}

double VoidWeightedIntensity::piece_integral(std::size_t i, double u0, double u1) const {
  if (!(u1 > u0)) return 0.0;
  const auto& piece = lambda_.pieces()[i];
  const double a = piece.coef;
  const double head = std::exp(-piece.offset - a * u0);
  const double width = u1 - u0;
  if (std::isinf(width)) return a > 0.0 ? omega_coef_ * head / a : std::numeric_limits<double>::infinity();
  if (std::abs(a * width) < 1e-12) return omega_coef_ * head * width;
  return omega_coef_ * head * (-std::expm1(-a * width)) / a;
}

double VoidWeightedIntensity::piece_moment(std::size_t i, double u0, double u1) const {
  if (!(u1 > u0)) return 0.0;
  const auto& piece = lambda_.pieces()[i];
  const double a = piece.coef;
  const double power = 1.0 / lambda_.exponent();
  if (std::isinf(u1)) {
    if (!(a > 0.0)) return std::numeric_limits<double>::infinity();
    return omega_coef_ * std::exp(-piece.offset) * boost::math::tgamma(power + 1.0, a * u0) / std::pow(a, power + 1.0);
  }
  using Rule = boost::math::quadrature::gauss<double, 20>;

  // Chunks short enough that exp(-a u) is resolved; stop once it has decayed.
  const double chunk = a > 0.0 ? std::max(1.0 / a, (u1 - u0) / 64.0) : (u1 - u0);
  double total = 0.0;
  double lo = u0;
  while (lo < u1) {
    const double hi = std::min(u1, lo + chunk);
    total += Rule::integrate(
        [&](double u) { return std::pow(u, power) * std::exp(-piece.offset - a * u); }, lo, hi);
    if (a > 0.0 && a * (hi - u0) > 800.0) break;
    lo = hi;
  }
  return omega_coef_ * total;
}

double VoidWeightedIntensity::operator()(double p) const {
  if (!(p > 0.0)) return 0.0;
  const auto& pieces = lambda_.pieces();
  auto it = std::lower_bound(pieces.begin(), pieces.end(), p,
                             [](const PowerLawDensity::Piece& piece, double x) { return piece.start < x; });
  const std::size_t i = it == pieces.begin() ? 0 : static_cast<std::size_t>(it - pieces.begin()) - 1;
  const double d = lambda_.exponent();
  return cumulative_[i] + piece_integral(i, std::pow(pieces[i].start, d), std::pow(p, d));
}

double VoidWeightedIntensity::first_moment(double p) const {
  if (!(p > 0.0)) return 0.0;
  const auto& pieces = lambda_.pieces();
  auto it = std::lower_bound(pieces.begin(), pieces.end(), p,
                             [](const PowerLawDensity::Piece& piece, double x) { return piece.start < x; });
  const std::size_t i = it == pieces.begin() ? 0 : static_cast<std::size_t>(it - pieces.begin()) - 1;
  const double d = lambda_.exponent();
  return cumulative_moment_[i] + piece_moment(i, std::pow(pieces[i].start, d), std::pow(p, d));
}

}  // namespace greenassoc
