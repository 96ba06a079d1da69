#include "gcrit/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "gcrit/errors.hpp"

namespace gcrit {

void ShootingConfig::validate() const {
  if (!(r_start > 0.0)) fail(ErrorKind::InvalidArgument, "r_start must be positive");
  if (r_end && !(*r_end > r_start)) fail(ErrorKind::InvalidArgument, "r_end must exceed r_start");
  if (!(step_tolerance > 0.0) || !(bisection_tolerance > 0.0)) fail(ErrorKind::InvalidArgument, "tolerances must be positive");
  if (!(g_lo >= 0.0) || !(g_hi > g_lo) || !(g_cap >= g_hi)) fail(ErrorKind::InvalidArgument, "need 0 <= g_lo < g_hi <= g_cap");
}

namespace {

using State = std::array<double, 2>;

// Variables s = ln r, y = u / r^(l+1), z = dy/ds:
//   y' = z,  z' = -(2l+1) z - g r^2 v(r) y.
// The potential is sampled strictly inside the current segment [lo, hi], so
// a jump at a split point is seen as a one-sided limit.
struct RadialSystem {
  const PotentialShape* shape;
  double degeneracy;
  double g;
  double lo = 0.0;
  double hi = 0.0;

  void operator()(const State& w, State& dw, double s) const {
    const double r = std::clamp(std::exp(s), std::nextafter(lo, hi), std::nextafter(hi, lo));
    dw[0] = w[1];
    dw[1] = -degeneracy * w[1] - g * r * r * shape->evaluate(r) * w[0];
  }
};

}  // namespace

ShotResult shoot(const PotentialShape& shape, AngularMomentum ell, double g, const ShootingConfig& config) {
  config.validate();
  if (!(g >= 0.0)) fail(ErrorKind::InvalidArgument, "coupling must be nonnegative");
  const double k = ell.degeneracy();
  const double r_end = config.r_end ? *config.r_end : 2.0 * shape.effective_range();
  if (!(r_end > shape.effective_range())) fail(ErrorKind::InvalidArgument, "r_end must exceed the effective range");

  // v ~ c r^s near the origin: start where g c r^(2+s) is negligible and
  // keep the first series correction.
  const double s_origin = shape.origin_exponent();
  const double probe = 1e-8;
  const double c = shape.evaluate(probe) / std::pow(probe, s_origin);
  const double p = 2.0 + s_origin;
  if (!(p > 0.0)) fail(ErrorKind::InvalidArgument, "shape is too singular at the origin");
  double r0 = config.r_start;
  if (g * c > 0.0) r0 = std::min(r0, std::pow(1e-14 / (g * c), 1.0 / p));
  const double corr = g * c * std::pow(r0, p) / (p + k);
  State w{1.0 - corr / p, -corr};

  ShotResult out;
  if (g == 0.0 || !(r0 < r_end)) {
    out.tail_coefficient = w[0] + w[1] / k;
    return out;
  }

  std::vector<double> marks{std::log(r0)};
  for (double sp : shape.split_points()) {
    if (sp > r0 && sp < r_end) marks.push_back(std::log(sp));
  }
  marks.push_back(std::log(r_end));

  namespace ode = boost::numeric::odeint;
  RadialSystem system{&shape, k, g};
  double last_y = w[0];
  auto observer = [&](const State& state, double) {
    if (!std::isfinite(state[0]) || !std::isfinite(state[1])) fail(ErrorKind::StepFailure, "solution is not finite");
    if ((state[0] < 0.0) != (last_y < 0.0)) ++out.nodes;
    last_y = state[0];
  };
  for (std::size_t i = 0; i + 1 < marks.size(); ++i) {
    const double span = marks[i + 1] - marks[i];
    system.lo = std::exp(marks[i]);
    system.hi = std::exp(marks[i + 1]);
    try {
      ode::integrate_adaptive(
          ode::make_controlled(config.step_tolerance, config.step_tolerance, ode::runge_kutta_dopri5<State>()),
          system, w, marks[i], marks[i + 1], span / 64.0, observer);
    } catch (const std::exception& e) {
      if (dynamic_cast<const NumericError*>(&e)) throw;
      fail(ErrorKind::StepFailure, e.what());
    }
  }
  // Scale-free tail coefficient: u / r^(l+1) -> A as r -> infinity.
  out.tail_coefficient = w[0] + w[1] / k;
  return out;
}

double critical_g(const PotentialShape& shape, AngularMomentum ell, const ShootingConfig& config) {
  config.validate();
  double lo = config.g_lo;
  double hi = config.g_hi;
  if (lo > 0.0 && shoot(shape, ell, lo, config).supercritical()) {
    fail(ErrorKind::BracketFailure, "lower end of the bracket is already supercritical");
  }
  while (!shoot(shape, ell, hi, config).supercritical()) {
    lo = hi;
    hi *= 2.0;
    if (hi > config.g_cap) {
      fail(ErrorKind::BracketFailure, shape.label() + " binds nothing below g = " + std::to_string(config.g_cap));
    }
  }
  while (hi - lo > config.bisection_tolerance * hi) {
    const double mid = 0.5 * (lo + hi);
    (shoot(shape, ell, mid, config).supercritical() ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

double bessel_j(double nu, double x) {
  if (!(nu > -1.0)) fail(ErrorKind::InvalidArgument, "bessel_j needs nu > -1");
  if (!(x > 0.0)) fail(ErrorKind::InvalidArgument, "bessel_j needs x > 0");
  const long double h = 0.5L * x;
  const long double h2 = h * h;
  long double term = std::pow(h, static_cast<long double>(nu)) / std::tgamma(static_cast<long double>(nu) + 1.0L);
  long double sum = term;
  for (int m = 1; m < 500; ++m) {
    term *= -h2 / (static_cast<long double>(m) * (static_cast<long double>(m) + nu));
    sum += term;
    if (std::abs(term) < 1e-21L * std::abs(sum) && m > h) break;
  }
  return static_cast<double>(sum);
}

double first_bessel_zero(double nu) {
  if (!(nu > -1.0)) fail(ErrorKind::InvalidArgument, "first_bessel_zero needs nu > -1");
  // J_nu is positive on (0, j_nu1); scan for the first sign change.
  const double step = 0.05;
  double lo = step;
  double hi = lo + step;
  while (bessel_j(nu, hi) > 0.0) {
    lo = hi;
    hi += step;
    if (hi > 60.0) fail(ErrorKind::NoRoot, "no Bessel zero found");
  }
  for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (bessel_j(nu, mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double square_well_closed_form(AngularMomentum ell) {
  const double z = first_bessel_zero(ell.lambda() - 1.0);
  return z * z;
}

double exponential_closed_form() {
  const double z = first_bessel_zero(0.0);
  return 0.25 * z * z;
}

}  // namespace gcrit
