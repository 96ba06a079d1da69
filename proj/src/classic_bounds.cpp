#include "gcrit/classic_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "gcrit/errors.hpp"

namespace gcrit {

void OptimizerConfig::validate() const {
  if (!(lower > 0.0) || !(upper > lower)) fail(ErrorKind::InvalidArgument, "search interval must satisfy 0 < lower < upper");
  if (grid_points < 3) fail(ErrorKind::InvalidArgument, "coarse scan needs at least 3 points");
  if (!(refine_tolerance > 0.0)) fail(ErrorKind::InvalidArgument, "refine_tolerance must be positive");
  scheme.validate();
}

OptimizerConfig glaser_config() {
  OptimizerConfig c;
  c.lower = 1.0;
  c.upper = 50.0;
  return c;
}

OptimizerConfig scale_config() { return OptimizerConfig{}; }

OptimizerConfig variational_config() {
  OptimizerConfig c;
  c.lower = 0.51;
  c.upper = 50.0;
  return c;
}

namespace {

constexpr double not_admissible = std::numeric_limits<double>::infinity();

double guarded(const std::function<double(double)>& objective, double x) {
  try {
    const double y = objective(x);
    return std::isfinite(y) ? y : not_admissible;
  } catch (const NumericError&) {
    return not_admissible;
  }
}

}  // namespace

Optimum minimize_scan(const std::function<double(double)>& objective, const OptimizerConfig& config) {
  config.validate();
  const std::size_t n = static_cast<std::size_t>(config.grid_points);
  const double log_lo = std::log(config.lower);
  const double step = (std::log(config.upper) - log_lo) / static_cast<double>(n - 1);
  auto node = [&](std::size_t i) { return i + 1 == n ? config.upper : std::exp(log_lo + step * static_cast<double>(i)); };

  const auto values = map_indices(n, [&](std::size_t i) { return guarded(objective, node(i)); }, config.execution);
  const auto best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
  if (!std::isfinite(values[best])) fail(ErrorKind::NoRoot, "objective is not admissible anywhere on the scan interval");

  Optimum out{values[best], node(best)};
  const double s_lo = std::log(node(best == 0 ? 0 : best - 1));
  const double s_hi = std::log(node(std::min(best + 1, n - 1)));
  const int bits = std::clamp(static_cast<int>(std::ceil(-std::log2(config.refine_tolerance))), 8,
                              std::numeric_limits<double>::digits / 2);
  std::uintmax_t max_iter = 200;
  const auto refined = boost::math::tools::brent_find_minima(
      [&](double s) { return guarded(objective, std::exp(s)); }, s_lo, s_hi, bits, max_iter);
  if (refined.second < out.value) out = Optimum{refined.second, std::exp(refined.first)};
  return out;
}

Optimum glaser_lower(const PotentialShape& shape, AngularMomentum ell, const OptimizerConfig& config) {
  if (config.lower < 1.0) fail(ErrorKind::InvalidArgument, "the Glaser exponent must satisfy p >= 1");
  const double k = ell.degeneracy();
  auto limit = [&](double p) {
    const double moment = integrate_radial(
        shape, [p](double r, double v) { return v > 0.0 ? std::exp(p * std::log(r * r * v) - std::log(r)) : 0.0; },
        config.scheme);
    if (!(moment > 0.0) || !std::isfinite(moment)) fail(ErrorKind::DivergentMoment, "Glaser moment is not finite");
    const double log_c = (p > 1.0 ? (p - 1.0) * std::log(p - 1.0) : 0.0) + std::lgamma(2.0 * p) -
                         (2.0 * p - 1.0) * std::log(k) - p * std::log(p) - 2.0 * std::lgamma(p);
    return std::exp(-(log_c + std::log(moment)) / p);
  };
  const auto best = minimize_scan([&](double p) { return -limit(p); }, config);
  return Optimum{-best.value, best.argument};
}

Optimum calogero_upper_linear(const PotentialShape& shape, AngularMomentum ell, const OptimizerConfig& config) {
  const int k = ell.degeneracy();
  auto limit = [&](double R) {
    const double split[] = {R};
    const double inner = integrate_radial(
        shape, [R, k](double r, double v) { return r * v * std::pow(r / R, k); }, config.scheme, 0.0, R, split);
    const double outer = R < shape.upper_limit()
                             ? integrate_radial(
                                   shape, [R, k](double r, double v) { return r * v * std::pow(R / r, k); },
                                   config.scheme, R, infinity, split)
                             : 0.0;
    return k / (inner + outer);
  };
  return minimize_scan(limit, config);
}

Optimum calogero_upper_nonlinear(const PotentialShape& shape, AngularMomentum ell, const OptimizerConfig& config) {
  const int two_l = 2 * ell.ell();
  auto limit = [&](double R) {
    const double split[] = {R};
    auto excess = [&](double g) {
      const double sum = integrate_radial(
          shape,
          [R, g, two_l](double r, double v) {
            if (v == 0.0) return 0.0;
            const double x = std::pow(r / R, two_l);
            return g * v / (x + R * R * g * v / x);
          },
          config.scheme, 0.0, infinity, split);
      return R * sum - 1.0;
    };
    double hi = 1.0;
    double f_hi = excess(hi);
    while (f_hi <= 0.0) {
      hi *= 2.0;
      if (hi > 1e12) fail(ErrorKind::NoRoot, "no coupling satisfies the condition at R = " + std::to_string(R));
      f_hi = excess(hi);
    }
    const double lo = hi > 1.0 ? hi / 2.0 : 0.0;
    const double f_lo = lo > 0.0 ? excess(lo) : -1.0;
    std::uintmax_t max_iter = 200;
    const auto root = boost::math::tools::toms748_solve(excess, lo, hi, f_lo, f_hi,
                                                        boost::math::tools::eps_tolerance<double>(48), max_iter);
    return 0.5 * (root.first + root.second);
  };
  return minimize_scan(limit, config);
}

Optimum variational_upper_closed(const PotentialShape& shape, AngularMomentum ell, const OptimizerConfig& config) {
  if (config.lower <= 0.5) fail(ErrorKind::InvalidArgument, "the variational exponent must exceed 1/2");
  const double lambda = ell.lambda();
  const auto grid = build_grid(shape, ell, config.scheme);
  const auto x = grid->nodes();
  std::vector<double> v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) v[i] = shape.evaluate(x[i]);

  // F(q; x) = x^q v^((q+1)/2)
  auto F = [](double q, double r, double vr) {
    return vr > 0.0 ? std::exp(q * std::log(r) + 0.5 * (q + 1.0) * std::log(vr)) : 0.0;
  };
  auto limit = [&](double p) {
    const double num = integrate_radial(
        shape, [&](double r, double vr) { return F(2.0 * p - 1.0, r, vr); }, config.scheme);
    std::vector<double> f(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) f[i] = F(p, x[i], v[i]) * std::pow(x[i], lambda);
    const auto below = grid->prefix_integral(f, Execution::serial);
    for (std::size_t i = 0; i < x.size(); ++i) f[i] = F(p, x[i], v[i]) * std::pow(x[i], -lambda) * below[i];
    const double den = grid->integral(f);
    if (!std::isfinite(num) || !(den > 0.0)) fail(ErrorKind::DivergentMoment, "variational integrals are not finite");
    return lambda * num / den;
  };
  return minimize_scan(limit, config);
}

namespace {

// Trial value psi(r) for the closed-form families.
double trial_value(const TrialFunctionSpec& trial, double parameter, int ell, double r, double v) {
  switch (trial.family) {
    case TrialFamily::power_weighted:
      return v > 0.0 ? std::exp(0.5 * ((2.0 * parameter - 1.0) * std::log(r) + parameter * std::log(v))) : 0.0;
    case TrialFamily::general:
      return v > 0.0 ? std::exp(0.5 * (trial.p * std::log(r) + parameter * std::log(v))) : 0.0;
    case TrialFamily::power:
      return std::pow(r, parameter);
    case TrialFamily::exponential:
      return std::pow(r, ell + 1) * std::exp(-parameter * r);
    case TrialFamily::explicit_function:
      break;
  }
  fail(ErrorKind::InvalidArgument, "explicit trials have no closed form");
}

}  // namespace

double rayleigh_quotient(const BirmanSchwingerOperator& op, const TrialFunctionSpec& trial, double parameter) {
  if (trial.iterations < 0) fail(ErrorKind::InvalidArgument, "iterations must be nonnegative");
  const auto& grid = *op.grid();
  const auto x = grid.nodes();
  const auto v = op.potential();
  std::vector<double> psi(x.size());
  double norm = 0.0;
  if (trial.family == TrialFamily::explicit_function) {
    if (!trial.function) fail(ErrorKind::InvalidArgument, "explicit trial without a function");
    const auto& f = *trial.function;
    if (f.grid_ptr() != op.grid()) fail(ErrorKind::GridMismatch, "explicit trial lives on a different grid");
    if (f.meaning() != Representation::weighted) fail(ErrorKind::InvalidArgument, "explicit trials must be weighted");
    psi.assign(f.values().begin(), f.values().end());
    std::vector<double> sq(psi.size());
    for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = psi[i] * psi[i];
    norm = grid.integral(sq);
  } else {
    if (trial.family == TrialFamily::power && !op.shape().support_cutoff()) {
      fail(ErrorKind::NotSquareIntegrable, "power trials need a finite-range shape");
    }
    const int l = op.ell().ell();
    for (std::size_t i = 0; i < x.size(); ++i) psi[i] = trial_value(trial, parameter, l, x[i], v[i]);
    norm = integrate_radial(
        op.shape(),
        [&](double r, double vr) {
          const double y = trial_value(trial, parameter, l, r, vr);
          return y * y;
        },
        op.scheme());
  }
  if (!std::isfinite(norm) || !(norm > 0.0)) fail(ErrorKind::NotSquareIntegrable, "trial norm is not finite");

  std::vector<double> source(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) source[i] = std::sqrt(v[i]) * psi[i];
  auto u = op.apply_green(source, Execution::serial);  // K psi = sqrt(v) u
  if (trial.iterations == 0) {
    std::vector<double> f(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) f[i] = source[i] * u[i];
    const double den = grid.integral(f);
    if (!(den > 0.0)) fail(ErrorKind::NotSquareIntegrable, "trial has no overlap with the kernel");
    return norm / den;
  }
  for (int i = 1; i < trial.iterations; ++i) u = op.apply(u, Execution::serial);
  const auto next = op.apply(u, Execution::serial);
  const double den = op.inner(u, next);
  if (!(den > 0.0)) fail(ErrorKind::NotSquareIntegrable, "iterated trial vanishes");
  return op.inner(u, u) / den;
}

Optimum rayleigh_upper(const BirmanSchwingerOperator& op, const TrialFunctionSpec& trial,
                       const OptimizerConfig& config) {
  if (trial.family == TrialFamily::explicit_function) return Optimum{rayleigh_quotient(op, trial, 0.0), 0.0};
  return minimize_scan([&](double parameter) { return rayleigh_quotient(op, trial, parameter); }, config);
}

Optimum rayleigh_upper(const PotentialShape& shape, AngularMomentum ell, const TrialFunctionSpec& trial,
                       const OptimizerConfig& config) {
  return rayleigh_upper(BirmanSchwingerOperator(shape, ell, config.scheme), trial, config);
}

double chadan_upper(const PotentialShape& shape, AngularMomentum ell, const QuadratureScheme& scheme) {
  const BirmanSchwingerOperator op(shape, ell, scheme);
  const double t1 = op.trace(1);
  const double t2 = op.trace(2);
  if (!(t2 > 0.0) || !std::isfinite(t1)) fail(ErrorKind::DegeneratePotential, "kernel traces are not positive");
  return t1 / t2;
}

}  // namespace gcrit
