#pragma once

#include <span>
#include <vector>

namespace greenassoc {

/// Cumulative intensity of a point process on the power axis p >= 0.
///
/// Piecewise: on (start_i, start_{i+1}] it equals offset_i + coef_i * p^exponent.
/// The first piece starts at 0 with offset 0, so the measure has no atom at 0.
/// A piece with coef 0 is frozen. The class is closed under sums, argument
/// scaling and capping, which covers every thinned/biased density needed by
/// the association analysis.
class PowerLawDensity {
 public:
  struct Piece {
    double start = 0.0;
    double offset = 0.0;
    double coef = 0.0;
  };

  explicit PowerLawDensity(double exponent);
  /// a * p^exponent on the whole axis.
  static PowerLawDensity power_law(double a, double exponent);
  /// sum_l weights[l] * a * min(p, thresholds[l])^exponent; thresholds need not be sorted.
  static PowerLawDensity battery_weighted(double a, double exponent, std::span<const double> weights,
                                          std::span<const double> thresholds);

  double operator()(double p) const;
  double exponent() const { return exponent_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  /// Breakpoints after 0.
  std::vector<double> breakpoints() const;

  /// p -> Lambda(s p), s > 0.
  PowerLawDensity scaled(double s) const;
  /// p -> Lambda(min(p, cap)).
  PowerLawDensity capped(double cap) const;
  PowerLawDensity operator+(const PowerLawDensity& other) const;
  PowerLawDensity operator-(const PowerLawDensity& other) const;
  PowerLawDensity operator*(double factor) const;

  /// `tol` is relative and absorbs rounding at piece boundaries.
  bool is_nondecreasing(double tol = 1e-12) const;

 private:
  PowerLawDensity(double exponent, std::vector<Piece> pieces);
  std::size_t piece_index(double p) const;
  void merge_equal_pieces();

  double exponent_;
  std::vector<Piece> pieces_;
};

/// F(p) = integral over (0, p] of dOmega(t) * exp(-Lambda(t)),
/// with Omega(t) = omega_coef * t^exponent sharing Lambda's exponent.
///
/// In u = t^exponent every piece of Lambda is linear, so each piece integrates
/// in closed form. `first_moment` gives the power-weighted version
/// integral of t dOmega(t) exp(-Lambda(t)) by Gauss-Legendre per piece.
class VoidWeightedIntensity {
 public:
  VoidWeightedIntensity(double omega_coef, PowerLawDensity lambda);

  double operator()(double p) const;
  double first_moment(double p) const;
  const PowerLawDensity& lambda() const { return lambda_; }

 private:
  double piece_integral(std::size_t i, double u0, double u1) const;
  double piece_moment(std::size_t i, double u0, double u1) const;

  double omega_coef_;
  PowerLawDensity lambda_;
  std::vector<double> cumulative_;  // F at each piece start
  std::vector<double> cumulative_moment_;
};

}  // namespace greenassoc
