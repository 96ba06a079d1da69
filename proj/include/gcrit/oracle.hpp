#pragma once

#include <optional>

#include "gcrit/potential.hpp"

namespace gcrit {

struct ShootingConfig {
  /// Upper limit on the starting radius; lowered automatically where the
  /// shape is singular at the origin so that the series start stays exact.
  double r_start = 1e-6;
  /// Matching radius; defaults to twice the effective range.
  std::optional<double> r_end;
  double step_tolerance = 1e-13;
  double g_lo = 0.0;
  double g_hi = 1.0;
  double g_cap = 1e6;
  double bisection_tolerance = 1e-10;

  void validate() const;
};

struct ShotResult {
  /// Sign changes of u on (r_start, r_end].
  int nodes = 0;
  /// Coefficient of r^(l+1) in u = A r^(l+1) + B r^(-l) at r_end, in units
  /// where u(r_start) = r_start^(l+1).
  double tail_coefficient = 1.0;

  int tail_sign() const noexcept { return tail_coefficient > 0.0 ? 1 : (tail_coefficient < 0.0 ? -1 : 0); }
  bool supercritical() const noexcept { return nodes > 0 || tail_coefficient < 0.0; }
};

/// Integrates u'' = [l(l+1)/r^2] u - g v u outward from the regular solution.
/// Throws StepFailure.
ShotResult shoot(const PotentialShape& shape, AngularMomentum ell, double g, const ShootingConfig& config = {});

/// Bisection on shoot().supercritical(). Throws BracketFailure.
double critical_g(const PotentialShape& shape, AngularMomentum ell, const ShootingConfig& config = {});

/// J_nu(x) by its power series, nu > -1, moderate x.
double bessel_j(double nu, double x);
/// First positive zero of J_nu, nu > -1.
double first_bessel_zero(double nu);

/// Square of the first zero of J_(l-1/2).
double square_well_closed_form(AngularMomentum ell);
/// (j_(0,1) / 2)^2.
double exponential_closed_form();

}  // namespace gcrit
