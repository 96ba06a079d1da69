#include "gcrit/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gcrit/errors.hpp"

namespace gcrit {

GridFunction::GridFunction(std::shared_ptr<const RadialGrid> grid, std::vector<double> values,
                           Representation meaning)
    : grid_(std::move(grid)), values_(std::move(values)), meaning_(meaning) {
  if (!grid_) fail(ErrorKind::InvalidArgument, "grid function without a grid");
  if (values_.size() != grid_->size()) fail(ErrorKind::GridMismatch, "value count differs from grid size");
  for (double v : values_) {
    if (!std::isfinite(v)) fail(ErrorKind::NonFinite, "grid function value is not finite");
  }
}

GridFunction GridFunction::sample(std::shared_ptr<const RadialGrid> grid,
                                  const std::function<double(double)>& f, Representation meaning) {
  std::vector<double> values(grid->size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = f(grid->nodes()[i]);
  return GridFunction(std::move(grid), std::move(values), meaning);
}

GridFunction GridFunction::combine(double a, const GridFunction& other, double b) const {
  if (other.grid_ != grid_) fail(ErrorKind::GridMismatch, "combining functions on different grids");
  if (other.meaning_ != meaning_) fail(ErrorKind::InvalidArgument, "combining different representations");
  std::vector<double> out(values_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a * values_[i] + b * other.values_[i];
  return GridFunction(grid_, std::move(out), meaning_);
}

double green_function(AngularMomentum ell, double r, double rp) {
  if (!(r > 0.0) || !(rp > 0.0)) fail(ErrorKind::InvalidArgument, "Green function needs positive radii");
  const double lo = std::min(r, rp);
  const double hi = std::max(r, rp);
  const int l = ell.ell();
  return std::pow(lo, l + 1) * std::pow(hi, -l) / ell.degeneracy();
}

BirmanSchwingerOperator::BirmanSchwingerOperator(PotentialShape shape, AngularMomentum ell,
                                                 const QuadratureScheme& scheme,
                                                 const GridOptions& options)
    : shape_(std::move(shape)), ell_(ell), scheme_(scheme) {
  grid_ = build_grid(shape_, ell_, scheme_, options);
  const auto x = grid_->nodes();
  v_.resize(x.size());
  regular_.resize(x.size());
  irregular_.resize(x.size());
  const int l = ell_.ell();
  for (std::size_t i = 0; i < x.size(); ++i) {
    v_[i] = shape_.evaluate(x[i]);
    regular_[i] = std::pow(x[i], l + 1);
    irregular_[i] = std::pow(x[i], -l);
  }
}

GridFunction BirmanSchwingerOperator::sample(const std::function<double(double)>& f,
                                             Representation meaning) const {
  return GridFunction::sample(grid_, f, meaning);
}

GridFunction BirmanSchwingerOperator::regular_start() const {
  return GridFunction(grid_, regular_, Representation::unweighted);
}

void BirmanSchwingerOperator::check_grid(const GridFunction& f) const {
  if (f.grid_ptr() != grid_) fail(ErrorKind::GridMismatch, "function lives on a different grid");
}

GridFunction BirmanSchwingerOperator::apply_green(std::span<const double> source, Execution exec) const {
  const std::size_t n = grid_->size();
  if (source.size() != n) fail(ErrorKind::GridMismatch, "source length differs from grid size");
  std::vector<double> inner_part(n);
  std::vector<double> outer_part(n);
  for (std::size_t i = 0; i < n; ++i) {
    inner_part[i] = regular_[i] * source[i];
    outer_part[i] = irregular_[i] * source[i];
  }
  const auto below = grid_->prefix_integral(inner_part, exec);
  const auto above = grid_->suffix_integral(outer_part, exec);
  const double norm = 1.0 / ell_.degeneracy();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = norm * (irregular_[i] * below[i] + regular_[i] * above[i]);
    if (!std::isfinite(out[i])) fail(ErrorKind::NonFinite, "operator application overflowed");
  }
  return GridFunction(grid_, std::move(out), Representation::unweighted);
}

GridFunction BirmanSchwingerOperator::apply(const GridFunction& u, Execution exec) const {
  check_grid(u);
  if (u.meaning() != Representation::unweighted) {
    fail(ErrorKind::InvalidArgument, "apply expects the unweighted representation u");
  }
  std::vector<double> source(u.size());
  for (std::size_t i = 0; i < source.size(); ++i) source[i] = v_[i] * u[i];
  return apply_green(source, exec);
}

double BirmanSchwingerOperator::inner(const GridFunction& f, const GridFunction& g) const {
  check_grid(f);
  check_grid(g);
  const auto w = grid_->weights();
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * v_[i] * f[i] * g[i];
  return s;
}

double BirmanSchwingerOperator::trace(int n) const {
  const auto x = grid_->nodes();
  const int l = ell_.ell();
  const double k = ell_.degeneracy();
  if (n == 1) {
    std::vector<double> f(x.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = x[i] * v_[i];
    return grid_->integral(f) / k;
  }
  if (n == 2) {
    // 2 (2l+1)^-2 integral of v(r) r^(-2l) [integral_0^r s^(2l+2) v(s) ds] dr
    std::vector<double> f(x.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::pow(x[i], 2 * l + 2) * v_[i];
    const auto below = grid_->prefix_integral(f);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = v_[i] * std::pow(x[i], -2 * l) * below[i];
    return 2.0 * grid_->integral(f) / (k * k);
  }
  fail(ErrorKind::InvalidArgument, "only traces of order 1 and 2 are available, got " + std::to_string(n));
}

GridFunction apply_operator(const BirmanSchwingerOperator& op, const GridFunction& u) { return op.apply(u); }

double weighted_inner(const BirmanSchwingerOperator& op, const GridFunction& f, const GridFunction& g) {
  return op.inner(f, g);
}

double trace_iterated(const PotentialShape& shape, AngularMomentum ell, int n, const QuadratureScheme& scheme) {
  return BirmanSchwingerOperator(shape, ell, scheme).trace(n);
}

}  // namespace gcrit
