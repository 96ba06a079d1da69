#include "gcrit/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/legendre.hpp>

#include "gcrit/errors.hpp"

namespace gcrit {

void QuadratureScheme::validate() const {
  if (!(rel_tolerance > 0.0)) fail(ErrorKind::InvalidArgument, "rel_tolerance must be positive");
  if (!(abs_tolerance > 0.0)) fail(ErrorKind::InvalidArgument, "abs_tolerance must be positive");
  if (max_nodes < 64) fail(ErrorKind::InvalidArgument, "max_nodes must be at least 64");
}

namespace {

// Kronrod 15-point rule with its embedded 7-point Gauss rule, stored on the
// nonnegative half of [-1, 1].
struct KronrodRule {
  std::array<double, 8> abscissa{};
  std::array<double, 8> kronrod_weight{};
  std::array<double, 8> gauss_weight{};  // zero where the node is Kronrod-only
};

const KronrodRule& kronrod_rule() {
  static const KronrodRule rule = [] {
    using boost::math::quadrature::gauss;
    using boost::math::quadrature::gauss_kronrod;
    KronrodRule r;
    const auto& xk = gauss_kronrod<double, 15>::abscissa();
    const auto& wk = gauss_kronrod<double, 15>::weights();
    const auto& xg = gauss<double, 7>::abscissa();
    const auto& wg = gauss<double, 7>::weights();
    for (std::size_t i = 0; i < 8; ++i) {
      r.abscissa[i] = xk[i];
      r.kronrod_weight[i] = wk[i];
      for (std::size_t j = 0; j < xg.size(); ++j) {
        if (std::abs(xg[j] - xk[i]) < 1e-14) r.gauss_weight[i] = wg[j];
      }
    }
    return r;
  }();
  return rule;
}

struct Piece {
  double lo;
  double hi;
  double value;
  double error;
  bool operator<(const Piece& other) const { return error < other.error; }
};

class AdaptiveIntegrator {
 public:
  AdaptiveIntegrator(const std::function<double(double)>& f, const QuadratureScheme& scheme)
      : f_(f), scheme_(scheme) {}

  // Integrand in the piece variable; mapped pieces live on t in [0, 1).
  double sample(double t, bool mapped, double origin) {
    double x = t;
    double jac = 1.0;
    if (mapped) {
      const double s = 1.0 - t;
      x = origin + t / s;
      jac = 1.0 / (s * s);
    }
    const double y = f_(x);
    if (!std::isfinite(y)) {
      fail(ErrorKind::NonFinite, "integrand returned " + std::to_string(y) + " at r = " + std::to_string(x));
    }
    return y * jac;
  }

  Piece evaluate(double lo, double hi, bool mapped, double origin) {
    const auto& rule = kronrod_rule();
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    const double fc = sample(mid, mapped, origin);
    double k = rule.kronrod_weight[0] * fc;
    double g = rule.gauss_weight[0] * fc;
    for (std::size_t i = 1; i < 8; ++i) {
      const double dx = half * rule.abscissa[i];
      const double s = sample(mid - dx, mapped, origin) + sample(mid + dx, mapped, origin);
      k += rule.kronrod_weight[i] * s;
      g += rule.gauss_weight[i] * s;
    }
    evaluations_ += 15;
    return Piece{lo, hi, k * half, std::abs((k - g) * half)};
  }

  double run(double a, double b) {
    std::vector<double> cuts{a};
    for (double s : scheme_.split_points) {
      if (s > a && s < b) cuts.push_back(s);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    const bool infinite = std::isinf(b);
    if (!infinite) cuts.push_back(b);

    std::priority_queue<Piece> finite_queue;
    std::priority_queue<Piece> tail_queue;
    const double origin = cuts.back();
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      if (cuts[i + 1] > cuts[i]) finite_queue.push(evaluate(cuts[i], cuts[i + 1], false, 0.0));
    }
    if (infinite) tail_queue.push(evaluate(0.0, 1.0, true, origin));

    auto totals = [&](double& value, double& error) {
      value = 0.0;
      error = 0.0;
      for (auto* q : {&finite_queue, &tail_queue}) {
        auto copy = *q;
        while (!copy.empty()) {
          value += copy.top().value;
          error += copy.top().error;
          copy.pop();
        }
      }
    };

    double value = 0.0;
    double error = 0.0;
    totals(value, error);
    while (error > std::max(scheme_.abs_tolerance, scheme_.rel_tolerance * std::abs(value))) {
      if (evaluations_ + 30 > scheme_.max_nodes) {
        fail(ErrorKind::BudgetExhausted,
             "adaptive quadrature used " + std::to_string(evaluations_) +
                 " evaluations; estimated error " + std::to_string(error));
      }
      const bool take_tail =
          !tail_queue.empty() && (finite_queue.empty() || tail_queue.top().error > finite_queue.top().error);
      auto& queue = take_tail ? tail_queue : finite_queue;
      const Piece worst = queue.top();
      queue.pop();
      const double mid = 0.5 * (worst.lo + worst.hi);
      if (!(mid > worst.lo && mid < worst.hi)) {
        // Cannot split any further at double resolution.
        queue.push(Piece{worst.lo, worst.hi, worst.value, 0.0});
        value = 0.0;
        totals(value, error);
        continue;
      }
      const Piece left = evaluate(worst.lo, mid, take_tail, origin);
      const Piece right = evaluate(mid, worst.hi, take_tail, origin);
      value += left.value + right.value - worst.value;
      error += left.error + right.error - worst.error;
      queue.push(left);
      queue.push(right);
      if (evaluations_ % 3000 < 30) totals(value, error);
    }
    totals(value, error);
    return value;
  }

 private:
  const std::function<double(double)>& f_;
  const QuadratureScheme& scheme_;
  std::size_t evaluations_ = 0;
};

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureScheme& scheme) {
  scheme.validate();
  if (!(a >= 0.0)) fail(ErrorKind::InvalidArgument, "lower limit must be nonnegative");
  if (!(b >= a)) fail(ErrorKind::InvalidArgument, "upper limit below lower limit");
  if (b == a) return 0.0;
  AdaptiveIntegrator integrator(f, scheme);
  return integrator.run(a, b);
}

double integrate_radial(const PotentialShape& shape,
                        const std::function<double(double r, double v)>& f,
                        const QuadratureScheme& scheme, double lower, double upper,
                        std::span<const double> extra_splits) {
  const int k = shape.map_power();
  const double top = std::min(upper, shape.upper_limit());
  if (!(top > lower)) return 0.0;
  auto to_t = [k](double r) { return k == 1 ? r : std::pow(r, 1.0 / k); };

  QuadratureScheme mapped = scheme;
  mapped.split_points.clear();
  auto add_split = [&](double r) {
    if (r > lower && r < top) mapped.split_points.push_back(to_t(r));
  };
  for (double s : shape.split_points()) add_split(s);
  for (double s : extra_splits) add_split(s);
  for (double s : scheme.split_points) add_split(s);
  // Geometric seeds below the effective range so that narrow peaks are not
  // missed by the first Kronrod rule.
  const double reach = std::isinf(top) ? shape.effective_range() : top;
  if (reach > 0.0) {
    for (int j = 0; j <= 6; ++j) add_split(std::ldexp(reach, -j));
  }

  const std::function<double(double)> integrand = [&](double t) {
    if (k == 1) return f(t, shape.evaluate(t));
    const double r = std::pow(t, k);
    const double jac = k * std::pow(t, k - 1);
    if (jac == 0.0) return 0.0;
    return f(r, shape.evaluate(r)) * jac;
  };
  return integrate(integrand, to_t(lower), std::isinf(top) ? infinity : to_t(top), mapped);
}

const ReferenceRule& reference_rule() {
  static const ReferenceRule rule = [] {
    using boost::math::quadrature::gauss;
    constexpr std::size_t p = RadialGrid::order;
    ReferenceRule r;
    const auto& xs = gauss<long double, p>::abscissa();
    const auto& ws = gauss<long double, p>::weights();
    std::array<long double, p> x{};
    std::array<long double, p> w{};
    // Boost stores the nonnegative half; rebuild the full ascending rule.
    const std::size_t half = xs.size();
    for (std::size_t i = 0; i < half; ++i) {
      x[half - 1 - i] = -xs[i];
      w[half - 1 - i] = ws[i];
      x[half + i] = xs[i];
      w[half + i] = ws[i];
    }
    for (std::size_t i = 0; i < p; ++i) {
      r.nodes[i] = static_cast<double>(x[i]);
      r.weights[i] = static_cast<double>(w[i]);
    }
    // Legendre expansion: c_m = (2m+1)/2 sum_j w_j P_m(x_j) f_j, and
    // int_{-1}^{t} P_m = (P_{m+1}(t) - P_{m-1}(t)) / (2m+1), m >= 1.
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < p; ++j) {
        long double s = 0.0L;
        for (unsigned m = 0; m < p; ++m) {
          const long double pm = boost::math::legendre_p(static_cast<int>(m), x[j]);
          long double antiderivative = 0.0L;
          if (m == 0) {
            antiderivative = x[i] + 1.0L;
          } else {
            antiderivative = (boost::math::legendre_p(static_cast<int>(m + 1), x[i]) -
                              boost::math::legendre_p(static_cast<int>(m - 1), x[i])) /
                             (2.0L * m + 1.0L);
          }
          s += (2.0L * m + 1.0L) / 2.0L * w[j] * pm * antiderivative;
        }
        r.cumulative[i][j] = static_cast<double>(s);
      }
    }
    return r;
  }();
  return rule;
}

RadialGrid::RadialGrid(std::vector<double> edges_in_t, int map_power)
    : edges_(std::move(edges_in_t)), map_power_(map_power) {
  if (edges_.size() < 2) fail(ErrorKind::InvalidArgument, "a grid needs at least one panel");
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (!(edges_[i] > edges_[i - 1])) fail(ErrorKind::NonMonotonicGrid, "panel edges must increase");
  }
  const auto& rule = reference_rule();
  const std::size_t n = panel_count() * order;
  nodes_.reserve(n);
  weights_.reserve(n);
  jacobian_.reserve(n);
  const int k = map_power_;
  for (std::size_t p = 0; p + 1 < edges_.size(); ++p) {
    const double half = 0.5 * (edges_[p + 1] - edges_[p]);
    const double mid = 0.5 * (edges_[p + 1] + edges_[p]);
    for (std::size_t j = 0; j < order; ++j) {
      const double t = mid + half * rule.nodes[j];
      const double x = k == 1 ? t : std::pow(t, k);
      const double dxdt = k == 1 ? 1.0 : k * std::pow(t, k - 1);
      nodes_.push_back(x);
      jacobian_.push_back(half * dxdt);
      weights_.push_back(rule.weights[j] * half * dxdt);
    }
  }
  cutoff_ = k == 1 ? edges_.back() : std::pow(edges_.back(), k);
}

double RadialGrid::integral(std::span<const double> f) const {
  if (f.size() != size()) fail(ErrorKind::GridMismatch, "function length differs from grid size");
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += weights_[i] * f[i];
  return s;
}

void RadialGrid::panel_sums(std::span<const double> f, std::vector<double>& local,
                            std::vector<double>& totals, Execution exec) const {
  if (f.size() != size()) fail(ErrorKind::GridMismatch, "function length differs from grid size");
  const auto& rule = reference_rule();
  const long panels = static_cast<long>(panel_count());
  local.assign(size(), 0.0);
  totals.assign(panel_count(), 0.0);
  auto one_panel = [&](long p) {
    const std::size_t base = static_cast<std::size_t>(p) * order;
    std::array<double, order> g{};
    double total = 0.0;
    for (std::size_t j = 0; j < order; ++j) {
      g[j] = jacobian_[base + j] * f[base + j];
      total += rule.weights[j] * g[j];
    }
    for (std::size_t i = 0; i < order; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < order; ++j) s += rule.cumulative[i][j] * g[j];
      local[base + i] = s;
    }
    totals[static_cast<std::size_t>(p)] = total;
  };
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static) if (panels >= 64)
    for (long p = 0; p < panels; ++p) one_panel(p);
  } else {
    for (long p = 0; p < panels; ++p) one_panel(p);
  }
}

std::vector<double> RadialGrid::prefix_integral(std::span<const double> f, Execution exec) const {
  std::vector<double> local;
  std::vector<double> totals;
  panel_sums(f, local, totals, exec);
  double offset = 0.0;
  for (std::size_t p = 0; p < totals.size(); ++p) {
    for (std::size_t i = 0; i < order; ++i) local[p * order + i] += offset;
    offset += totals[p];
  }
  return local;
}

std::vector<double> RadialGrid::suffix_integral(std::span<const double> f, Execution exec) const {
  std::vector<double> local;
  std::vector<double> totals;
  panel_sums(f, local, totals, exec);
  double after = 0.0;
  for (std::size_t p = totals.size(); p-- > 0;) {
    for (std::size_t i = 0; i < order; ++i) {
      double& v = local[p * order + i];
      v = after + (totals[p] - v);
    }
    after += totals[p];
  }
  return local;
}

namespace {

double checked_moment(const PotentialShape& shape, double power, const QuadratureScheme& scheme,
                      double lower = 0.0) {
  double m = 0.0;
  try {
    m = integrate_radial(
        shape, [power](double r, double v) { return v == 0.0 ? 0.0 : std::pow(r, power) * v; },
        scheme, lower);
  } catch (const NumericError& e) {
    if (e.kind() == ErrorKind::BudgetExhausted || e.kind() == ErrorKind::NonFinite) {
      fail(ErrorKind::DivergentMoment, "moment of order " + std::to_string(power) + " of " +
                                           shape.label() + " does not converge: " + e.what());
    }
    throw;
  }
  if (!std::isfinite(m)) fail(ErrorKind::DivergentMoment, "moment is not finite");
  return m;
}

std::vector<double> panel_edges(const PotentialShape& shape, double cutoff, const GridOptions& opt) {
  const int k = shape.map_power();
  auto to_t = [k](double r) { return k == 1 ? r : std::pow(r, 1.0 / k); };
  const double top = to_t(cutoff);
  std::vector<double> breaks{0.0, top};
  for (double s : shape.split_points()) {
    if (s > 0.0 && s < cutoff) breaks.push_back(to_t(s));
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  std::vector<double> edges{0.0};
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i];
    const double b = breaks[i + 1];
    const auto pieces = static_cast<std::size_t>(std::max(1.0, std::ceil((b - a) / opt.panel_width)));
    for (std::size_t j = 1; j <= pieces; ++j) {
      edges.push_back(j == pieces ? b : a + (b - a) * static_cast<double>(j) / pieces);
    }
  }
  // Geometric refinement of the first panel toward the origin.
  const double first = edges[1];
  std::vector<double> graded{0.0};
  for (int m = opt.origin_levels; m >= 1; --m) graded.push_back(std::ldexp(first, -m));
  graded.insert(graded.end(), edges.begin() + 1, edges.end());
  return graded;
}

}  // namespace

std::shared_ptr<const RadialGrid> build_grid(const PotentialShape& shape, AngularMomentum ell,
                                             const QuadratureScheme& scheme,
                                             const GridOptions& options) {
  scheme.validate();
  const double lowest = checked_moment(shape, 1.0, scheme);
  if (lowest == 0.0) {
    fail(ErrorKind::DegeneratePotential, "potential " + shape.label() + " vanishes identically");
  }
  const double power = 2.0 * ell.ell() + 2.0;
  const double highest = checked_moment(shape, power, scheme);
  const double eps = shape.tail_fraction();

  double cutoff = 0.0;
  if (auto c = shape.support_cutoff()) {
    cutoff = *c;
  } else {
    double hi = std::max(1.0, shape.effective_range());
    while (checked_moment(shape, power, scheme, hi) > eps * highest) {
      hi *= 1.5;
      if (hi > 1e300) fail(ErrorKind::DivergentMoment, "tail of the moment never becomes small");
    }
    double lo = hi / 1.5;
    for (int it = 0; it < 40; ++it) {
      const double mid = std::sqrt(lo * hi);
      if (checked_moment(shape, power, scheme, mid) > eps * highest) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    cutoff = std::max(hi, shape.effective_range());
  }

  GridOptions opt = options;
  for (;;) {
    auto grid = std::make_shared<const RadialGrid>(panel_edges(shape, cutoff, opt), shape.map_power());
    if (grid->size() > scheme.max_nodes) {
      fail(ErrorKind::BudgetExhausted, "grid for " + shape.label() + " needs more than " +
                                           std::to_string(scheme.max_nodes) + " nodes");
    }
    std::vector<double> m1(grid->size());
    std::vector<double> m2(grid->size());
    for (std::size_t i = 0; i < grid->size(); ++i) {
      const double x = grid->nodes()[i];
      const double v = shape.evaluate(x);
      m1[i] = x * v;
      m2[i] = std::pow(x, power) * v;
    }
    const double slack = scheme.rel_tolerance + eps;
    const bool ok = std::abs(grid->integral(m1) - lowest) <= slack * std::abs(lowest) &&
                    std::abs(grid->integral(m2) - highest) <= slack * std::abs(highest);
    if (ok) return grid;
    opt.panel_width *= 0.5;
  }
}

}  // namespace gcrit
