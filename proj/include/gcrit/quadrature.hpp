#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <vector>

#include "gcrit/parallel.hpp"
#include "gcrit/potential.hpp"

namespace gcrit {

inline constexpr double infinity = std::numeric_limits<double>::infinity();

struct QuadratureScheme {
  double rel_tolerance = 1e-10;
  double abs_tolerance = 1e-14;
  /// Budget on integrand evaluations (adaptive rules) or grid nodes.
  std::size_t max_nodes = 400000;
  /// Radii where the integrand may be non-smooth.
  std::vector<double> split_points;

  /// Throws InvalidArgument when a field violates its range.
  void validate() const;
};

/// Adaptive Gauss-Kronrod (7/15) integration of f over [a, b]; b may be
/// +infinity, in which case the last piece is mapped to [0, 1) by
/// x = c + t / (1 - t). Pieces are split at scheme.split_points.
/// Throws BudgetExhausted or NonFinite.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureScheme& scheme = {});

/// Integral of f(r, v(r)) over (lower, min(upper, support)) in the shape's
/// smooth variable t = r^(1/map_power), splitting at the shape's split points
/// and at extra_splits.
double integrate_radial(const PotentialShape& shape,
                        const std::function<double(double r, double v)>& f,
                        const QuadratureScheme& scheme = {}, double lower = 0.0,
                        double upper = infinity, std::span<const double> extra_splits = {});

/// Composite Gauss-Legendre grid on [0, cutoff], built in the shape's smooth
/// variable t with x = t^k. Besides plain weights it carries, per panel, the
/// spectral indefinite-integration matrix, so prefix and suffix integrals of
/// sampled functions cost O(N * order).
class RadialGrid {
 public:
  static constexpr std::size_t order = 16;

  /// Panel edges in t, and the map power k (x = t^k).
  RadialGrid(std::vector<double> edges_in_t, int map_power);

  std::size_t size() const noexcept { return nodes_.size(); }
  std::size_t panel_count() const noexcept { return edges_.size() - 1; }
  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> weights() const noexcept { return weights_; }
  double cutoff() const noexcept { return cutoff_; }
  int map_power() const noexcept { return map_power_; }
  std::span<const double> edges() const noexcept { return edges_; }

  double integral(std::span<const double> f) const;
  /// out[i] = integral of f over [0, x_i].
  std::vector<double> prefix_integral(std::span<const double> f,
                                      Execution exec = Execution::parallel) const;
  /// out[i] = integral of f over [x_i, cutoff].
  std::vector<double> suffix_integral(std::span<const double> f,
                                      Execution exec = Execution::parallel) const;

 private:
  void panel_sums(std::span<const double> f, std::vector<double>& local,
                  std::vector<double>& totals, Execution exec) const;

  std::vector<double> edges_;
  int map_power_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<double> jacobian_;  // (dt/2) * dx/dt at each node
  double cutoff_ = 0.0;
};

/// Reference Gauss-Legendre rule on [-1, 1] and its indefinite integration
/// matrix S[i][j] = integral over [-1, t_i] of the j-th Lagrange basis.
struct ReferenceRule {
  std::array<double, RadialGrid::order> nodes;
  std::array<double, RadialGrid::order> weights;
  std::array<std::array<double, RadialGrid::order>, RadialGrid::order> cumulative;
};
const ReferenceRule& reference_rule();

struct GridOptions {
  /// Panel width in the smooth variable t.
  double panel_width = 0.25;
  /// Geometric refinement levels toward the origin.
  int origin_levels = 12;
};

/// Grid for the (shape, ell) pair: clustered at the origin, split at the
/// shape's split points, extended until the tail of r^(2l+2) v is below the
/// shape's tail fraction. Halves the panel width until grid moments of r v and
/// r^(2l+2) v match adaptive quadrature to rel_tolerance.
/// Throws DivergentMoment, DegeneratePotential or BudgetExhausted.
std::shared_ptr<const RadialGrid> build_grid(const PotentialShape& shape, AngularMomentum ell,
                                             const QuadratureScheme& scheme = {},
                                             const GridOptions& options = {});

}  // namespace gcrit
