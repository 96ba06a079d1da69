#pragma once

#include <vector>

#include "gcrit/potential.hpp"
#include "gcrit/quadrature.hpp"

namespace gcrit {

/// Taylor coefficients in g of the zero-energy S-wave Jost function
///   f(g) = sum_n (-1)^n a_n g^n
/// and of its reciprocal 1/f(g) = sum_n M_n g^n.
struct JostSeries {
  std::vector<double> M;
  std::vector<double> a;

  /// Highest order present in both lists.
  int order() const noexcept;
};

inline constexpr int max_jost_order = 6;

/// M_0 .. M_N with M_0 = 1 and M_n = integral of v psi_(n-1), psi_0 = r.
/// The shape is taken as an S-wave problem. Throws DivergentMoment.
std::vector<double> reciprocal_coefficients(const PotentialShape& shape, int N, const QuadratureScheme& scheme = {});

/// a_0 .. a_N of the Jost function by iterated suffix integration,
///   T_0 = 1, T_k(x) = integral_x^inf (y - x) v(y) T_(k-1)(y) dy, a_n = integral r v T_(n-1).
/// Requires 1 <= N <= max_jost_order.
std::vector<double> jost_coefficients(const PotentialShape& shape, int N, const QuadratureScheme& scheme = {});

/// Both series; defaults N = 8 for M and N = 6 for a.
JostSeries jost_series(const PotentialShape& shape, int n_reciprocal = 8, int n_jost = max_jost_order,
                       const QuadratureScheme& scheme = {});
/// Same for the l-wave problem through its S-wave reduction.
JostSeries jost_series(const PotentialShape& shape, AngularMomentum ell, int n_reciprocal = 8,
                       int n_jost = max_jost_order, const QuadratureScheme& scheme = {});

/// |sum_p (-1)^p M_(n-p) a_p| for n = 1 .. order().
std::vector<double> convolution_residuals(const JostSeries& series);
/// Largest of convolution_residuals.
double verify_convolution(const JostSeries& series);

/// Ratios M_n / M_(n+1), n = 0 .. N-1. Each equals 1/alpha_n, an increasing
/// lower limit on g_c.
std::vector<double> dalembert_estimate(const JostSeries& series);

}  // namespace gcrit
