#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "gcrit/kernel.hpp"
#include "gcrit/parallel.hpp"
#include "gcrit/potential.hpp"
#include "gcrit/quadrature.hpp"

namespace gcrit {

/// One-dimensional search: logarithmic coarse scan over [lower, upper]
/// followed by Brent refinement around the best scan point.
struct OptimizerConfig {
  double lower = 1e-2;
  double upper = 1e2;
  int grid_points = 200;
  double refine_tolerance = 1e-10;
  Execution execution = Execution::parallel;
  QuadratureScheme scheme;

  void validate() const;
};

OptimizerConfig glaser_config();       // p in [1, 50]
OptimizerConfig scale_config();        // R or q in [1e-2, 1e2]
OptimizerConfig variational_config();  // p in [0.51, 50]

struct Optimum {
  double value = 0.0;
  double argument = 0.0;
};

/// Minimum of objective over the configured interval. Points where the
/// objective throws a NumericError or returns a non-finite value are skipped.
/// Throws NoRoot if no admissible point exists.
Optimum minimize_scan(const std::function<double(double)>& objective, const OptimizerConfig& config);

/// Lower limit max over p >= 1 of [C_p(l) * integral (r^2 v)^p dr / r]^(-1/p).
Optimum glaser_lower(const PotentialShape& shape, AngularMomentum ell,
                     const OptimizerConfig& config = glaser_config());

/// Upper limit min over R of
/// (2l+1) / [integral_0^R r v (r/R)^(2l+1) + integral_R^inf r v (R/r)^(2l+1)].
Optimum calogero_upper_linear(const PotentialShape& shape, AngularMomentum ell,
                              const OptimizerConfig& config = scale_config());

/// Upper limit min over R of the smallest g solving
/// R * integral g v / [(r/R)^(2l) + (R/r)^(2l) R^2 g v] dr = 1.
Optimum calogero_upper_nonlinear(const PotentialShape& shape, AngularMomentum ell,
                                 const OptimizerConfig& config = scale_config());

/// Closed-form variational upper limit with F(q; x) = x^q v(x)^((q+1)/2),
/// minimized over p > 1/2.
Optimum variational_upper_closed(const PotentialShape& shape, AngularMomentum ell,
                                 const OptimizerConfig& config = variational_config());

enum class TrialFamily {
  power_weighted,  // [r^(2p-1) v^p]^(1/2), free parameter p
  general,         // [r^p v^q]^(1/2), p fixed, free parameter q
  power,           // r^p on the support of a finite-range shape, free parameter p
  exponential,     // r^(l+1) exp(-q r), free parameter q
  explicit_function,
};

/// Trial function for the Rayleigh quotient, living in the weighted space.
struct TrialFunctionSpec {
  TrialFamily family = TrialFamily::power_weighted;
  double p = 1.0;
  double q = 1.0;
  /// Operator applications before forming the quotient.
  int iterations = 0;
  /// Weighted trial on the operator grid, for explicit_function.
  std::optional<GridFunction> function;
};

/// <K^i psi|K^i psi> / <K^(i+1) psi|K^i psi> for the trial with its free
/// parameter set to parameter. Throws NotSquareIntegrable.
double rayleigh_quotient(const BirmanSchwingerOperator& op, const TrialFunctionSpec& trial, double parameter);

/// Rayleigh quotient minimized over the family's free parameter
/// (explicit trials are evaluated once).
Optimum rayleigh_upper(const PotentialShape& shape, AngularMomentum ell, const TrialFunctionSpec& trial,
                       const OptimizerConfig& config = scale_config());
Optimum rayleigh_upper(const BirmanSchwingerOperator& op, const TrialFunctionSpec& trial,
                       const OptimizerConfig& config = scale_config());

/// t1 / t2 from the traces of K and K^2.
double chadan_upper(const PotentialShape& shape, AngularMomentum ell, const QuadratureScheme& scheme = {});

}  // namespace gcrit
