#include "gcrit/jost.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gcrit/errors.hpp"

namespace gcrit {

int JostSeries::order() const noexcept {
  return static_cast<int>(std::min(M.size(), a.size())) - 1;
}

namespace {

struct SWaveGrid {
  std::shared_ptr<const RadialGrid> grid;
  std::vector<double> v;
};

SWaveGrid make_grid(const PotentialShape& shape, const QuadratureScheme& scheme) {
  SWaveGrid g;
  g.grid = build_grid(shape, AngularMomentum(0), scheme);
  const auto x = g.grid->nodes();
  g.v.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) g.v[i] = shape.evaluate(x[i]);
  return g;
}

// T[v f](x) = integral_x^inf (y - x) v(y) f(y) dy.
std::vector<double> tail_transform(const SWaveGrid& g, const std::vector<double>& f) {
  const auto x = g.grid->nodes();
  std::vector<double> plain(x.size());
  std::vector<double> moment(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    plain[i] = g.v[i] * f[i];
    moment[i] = x[i] * plain[i];
  }
  const auto s0 = g.grid->suffix_integral(plain, Execution::serial);
  const auto s1 = g.grid->suffix_integral(moment, Execution::serial);
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = s1[i] - x[i] * s0[i];
  return out;
}

double first_moment(const SWaveGrid& g, const std::vector<double>& f) {
  const auto x = g.grid->nodes();
  std::vector<double> h(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) h[i] = x[i] * g.v[i] * f[i];
  const double m = g.grid->integral(h);
  if (!std::isfinite(m)) fail(ErrorKind::DivergentMoment, "Jost moment is not finite");
  return m;
}

}  // namespace

std::vector<double> reciprocal_coefficients(const PotentialShape& shape, int N, const QuadratureScheme& scheme) {
  if (N < 1) fail(ErrorKind::InvalidArgument, "series order must be at least 1");
  const auto g = make_grid(shape, scheme);
  // chi_0 = 1, chi_n = M_n - T[v chi_(n-1)], M_n = integral r v chi_(n-1);
  // chi_n is the kernel applied to chi_(n-1), so M_n = <r, A^(n-1) 1>_v.
  std::vector<double> M{1.0};
  std::vector<double> chi(g.v.size(), 1.0);
  for (int n = 1; n <= N; ++n) {
    const double m = first_moment(g, chi);
    M.push_back(m);
    if (n == N) break;
    const auto t = tail_transform(g, chi);
    for (std::size_t i = 0; i < chi.size(); ++i) chi[i] = m - t[i];
  }
  return M;
}

std::vector<double> jost_coefficients(const PotentialShape& shape, int N, const QuadratureScheme& scheme) {
  if (N < 1 || N > max_jost_order) {
    fail(ErrorKind::InvalidArgument, "Jost coefficients are available for orders 1.." +
                                         std::to_string(max_jost_order) + ", got " + std::to_string(N));
  }
  const auto g = make_grid(shape, scheme);
  std::vector<double> a{1.0};
  std::vector<double> t(g.v.size(), 1.0);
  for (int n = 1; n <= N; ++n) {
    a.push_back(first_moment(g, t));
    if (n < N) t = tail_transform(g, t);
  }
  return a;
}

JostSeries jost_series(const PotentialShape& shape, int n_reciprocal, int n_jost, const QuadratureScheme& scheme) {
  return JostSeries{reciprocal_coefficients(shape, n_reciprocal, scheme), jost_coefficients(shape, n_jost, scheme)};
}

JostSeries jost_series(const PotentialShape& shape, AngularMomentum ell, int n_reciprocal, int n_jost,
                       const QuadratureScheme& scheme) {
  return jost_series(reduce_to_s_wave(shape, ell), n_reciprocal, n_jost, scheme);
}

std::vector<double> convolution_residuals(const JostSeries& series) {
  std::vector<double> out;
  for (int n = 1; n <= series.order(); ++n) {
    double sum = 0.0;
    for (int p = 0; p <= n; ++p) {
      const double term = series.M[static_cast<std::size_t>(n - p)] * series.a[static_cast<std::size_t>(p)];
      sum += (p % 2 == 0) ? term : -term;
    }
    out.push_back(std::abs(sum));
  }
  return out;
}

double verify_convolution(const JostSeries& series) {
  const auto r = convolution_residuals(series);
  return r.empty() ? 0.0 : *std::max_element(r.begin(), r.end());
}

std::vector<double> dalembert_estimate(const JostSeries& series) {
  if (series.M.size() < 3) fail(ErrorKind::InvalidArgument, "d'Alembert ratios need M up to order 2");
  std::vector<double> out;
  for (std::size_t n = 0; n + 1 < series.M.size(); ++n) out.push_back(series.M[n] / series.M[n + 1]);
  return out;
}

}  // namespace gcrit
