#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gcrit {

/// Orbital angular momentum quantum number with its half-integer companion
/// lambda = ell + 1/2.
class AngularMomentum {
 public:
  explicit AngularMomentum(int ell);

  int ell() const noexcept { return ell_; }
  double lambda() const noexcept { return ell_ + 0.5; }
  /// 2*ell + 1, the normalisation of the free zero-energy Green function.
  int degeneracy() const noexcept { return 2 * ell_ + 1; }

  friend bool operator==(AngularMomentum, AngularMomentum) = default;

 private:
  int ell_;
};

/// Static metadata that accompanies a profile v(r).
struct ShapeTraits {
  std::optional<double> support_cutoff;
  /// Leading power s with v(r) ~ r^s as r -> 0.
  double origin_exponent = 0.0;
  /// Integer k such that v(t^k) * t^(k-1) is smooth in t. Quadrature runs in t.
  int map_power = 1;
  /// Radii where v or one of its low derivatives jumps.
  std::vector<double> split_points;
  /// Relative tail budget used to pick the effective range.
  double tail_fraction = 1e-12;
  /// Computed from tail_fraction when left empty.
  std::optional<double> effective_range;
};

/// Reduced attractive profile v(r) >= 0 of V(r) = -g v(r), with lengths in
/// units of the potential range. Immutable; cheap to copy.
class PotentialShape {
 public:
  using Profile = std::function<double(double)>;

  PotentialShape(std::string label, Profile profile, ShapeTraits traits);

  /// v(r). Throws NegativeValue if the profile goes below zero.
  double evaluate(double r) const;
  double operator()(double r) const { return evaluate(r); }

  const std::string& label() const noexcept { return label_; }
  std::optional<double> support_cutoff() const noexcept { return traits_.support_cutoff; }
  double effective_range() const noexcept { return effective_range_; }
  double origin_exponent() const noexcept { return traits_.origin_exponent; }
  int map_power() const noexcept { return traits_.map_power; }
  std::span<const double> split_points() const noexcept { return traits_.split_points; }
  double tail_fraction() const noexcept { return traits_.tail_fraction; }
  /// Support cutoff, or +infinity.
  double upper_limit() const noexcept;
  const ShapeTraits& traits() const noexcept { return traits_; }

 private:
  std::string label_;
  std::shared_ptr<const Profile> profile_;
  ShapeTraits traits_;
  double effective_range_ = 0.0;
};

/// v(r) = 1 for r < 1, 0 beyond.
PotentialShape make_square_well();
/// v(r) = exp(-r).
PotentialShape make_exponential();
/// v(r) = r exp(-r).
PotentialShape make_r_exponential();

/// Monotone piecewise-cubic (PCHIP) interpolation of tabulated samples,
/// extended by zero beyond the last radius and by the first value below the
/// first radius. Requires at least four samples with strictly increasing
/// radii and nonnegative values.
PotentialShape from_table(std::vector<std::pair<double, double>> samples,
                          std::string label = "table");

/// Reads a two-column (radius, value) text file. Columns may be separated by
/// whitespace or commas; '#' starts a comment.
std::vector<std::pair<double, double>> read_table_file(const std::string& path);
PotentialShape load_table_file(const std::string& path);

/// Maps the ell-wave problem for v onto an equivalent S-wave problem:
///   W(x) = (2l+1)^-2 v(x^(1/(2l+1))) x^(-4l/(2l+1)).
/// The S-wave critical coupling of W equals the ell-wave critical coupling of v.
PotentialShape reduce_to_s_wave(const PotentialShape& shape, AngularMomentum ell);

}  // namespace gcrit
