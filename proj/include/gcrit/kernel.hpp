#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "gcrit/parallel.hpp"
#include "gcrit/potential.hpp"
#include "gcrit/quadrature.hpp"

namespace gcrit {

/// Whether grid values hold u(r) or the symmetrised phi(r) = sqrt(v) u(r).
enum class Representation { unweighted, weighted };

/// A radial function sampled on the nodes of a RadialGrid.
class GridFunction {
 public:
  GridFunction(std::shared_ptr<const RadialGrid> grid, std::vector<double> values,
               Representation meaning = Representation::unweighted);

  static GridFunction sample(std::shared_ptr<const RadialGrid> grid,
                             const std::function<double(double)>& f,
                             Representation meaning = Representation::unweighted);

  const RadialGrid& grid() const noexcept { return *grid_; }
  const std::shared_ptr<const RadialGrid>& grid_ptr() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  Representation meaning() const noexcept { return meaning_; }

  /// a * this + b * other on the same grid.
  GridFunction combine(double a, const GridFunction& other, double b) const;

 private:
  std::shared_ptr<const RadialGrid> grid_;
  std::vector<double> values_;
  Representation meaning_;
};

/// Zero-energy free Green function (2l+1)^-1 r_<^(l+1) r_>^(-l).
double green_function(AngularMomentum ell, double r, double rp);

/// Birman-Schwinger operator of a (shape, ell) pair discretised on a fixed
/// grid. In the unweighted form it acts as
///   (A u)(r) = integral of g_l(r, r') v(r') u(r') dr',
/// evaluated with prefix and suffix integrals; no kernel matrix is formed.
class BirmanSchwingerOperator {
 public:
  BirmanSchwingerOperator(PotentialShape shape, AngularMomentum ell,
                          const QuadratureScheme& scheme = {}, const GridOptions& options = {});

  const PotentialShape& shape() const noexcept { return shape_; }
  AngularMomentum ell() const noexcept { return ell_; }
  const QuadratureScheme& scheme() const noexcept { return scheme_; }
  const std::shared_ptr<const RadialGrid>& grid() const noexcept { return grid_; }
  /// v at the grid nodes.
  std::span<const double> potential() const noexcept { return v_; }

  GridFunction sample(const std::function<double(double)>& f,
                      Representation meaning = Representation::unweighted) const;
  /// u0(r) = r^(l+1).
  GridFunction regular_start() const;

  /// u_next = A u. Throws NonFinite on overflow. Inputs are expected to be
  /// regular at the origin (u ~ r^(l+1)), as every iterate of r^(l+1) is.
  GridFunction apply(const GridFunction& u, Execution exec = Execution::parallel) const;
  /// Green function applied to an arbitrary source density s:
  /// integral of g_l(r, r') s(r') dr'.
  GridFunction apply_green(std::span<const double> source, Execution exec = Execution::parallel) const;

  /// Integral of v f g over the grid.
  double inner(const GridFunction& f, const GridFunction& g) const;

  /// Trace of K (n = 1) or of K^2 (n = 2), at unit strength.
  double trace(int n) const;

 private:
  void check_grid(const GridFunction& f) const;

  PotentialShape shape_;
  AngularMomentum ell_;
  QuadratureScheme scheme_;
  std::shared_ptr<const RadialGrid> grid_;
  std::vector<double> v_;
  std::vector<double> regular_;    // x^(l+1)
  std::vector<double> irregular_;  // x^(-l)
};

GridFunction apply_operator(const BirmanSchwingerOperator& op, const GridFunction& u);
double weighted_inner(const BirmanSchwingerOperator& op, const GridFunction& f, const GridFunction& g);
/// t1 = (2l+1)^-1 integral of r v; t2 = double integral of K(r, s)^2.
double trace_iterated(const PotentialShape& shape, AngularMomentum ell, int n,
                      const QuadratureScheme& scheme = {});

}  // namespace gcrit
