#pragma once

// Independent reference for the exponential well v = exp(-r) at l = 0 with
// the trial psi = r exp(-q r): every Green-function iterate is a finite sum
// of r^j exp(-a r) terms, so the Rayleigh quotients follow from exact
// incomplete-gamma identities (long double coefficients).

#include <boost/math/tools/minima.hpp>

#include <cmath>
#include <map>
#include <utility>

namespace exp_exact {

// (decay a, power j) -> coefficient
using Series = std::map<std::pair<long double, int>, long double>;

inline long double factorial(int n) {
  long double f = 1.0L;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

inline Series multiply_by_potential(const Series& f) {
  Series out;
  for (const auto& [key, c] : f) out[{key.first + 1.0L, key.second}] += c;
  return out;
}

inline Series times_r(const Series& f) {
  Series out;
  for (const auto& [key, c] : f) out[{key.first, key.second + 1}] += c;
  return out;
}

// integral_r^inf s^j exp(-a s) ds as a series in r (a > 0)
inline void add_upper_tail(Series& out, long double a, int j, long double c) {
  for (int k = 0; k <= j; ++k) out[{a, k}] += c * factorial(j) / (factorial(k) * std::pow(a, j - k + 1));
}

// G[f](r) = integral_0^r s f(s) ds + r integral_r^inf f(s) ds, all decays > 0
inline Series green(const Series& f) {
  Series out;
  for (const auto& [key, c] : f) {
    const auto [a, j] = key;
    // integral_0^r s^(j+1) e^(-a s) = (j+1)!/a^(j+2) - tail
    out[{0.0L, 0}] += c * factorial(j + 1) / std::pow(a, j + 2);
    add_upper_tail(out, a, j + 1, -c);
    Series tail;
    add_upper_tail(tail, a, j, c);
    for (const auto& [k2, c2] : times_r(tail)) out[k2] += c2;
  }
  return out;
}

// integral_0^inf f g
inline long double overlap(const Series& f, const Series& g) {
  long double sum = 0.0L;
  for (const auto& [kf, cf] : f) {
    for (const auto& [kg, cg] : g) {
      const long double a = kf.first + kg.first;
      const int j = kf.second + kg.second;
      sum += cf * cg * factorial(j) / std::pow(a, j + 1);
    }
  }
  return sum;
}

/// <K^i psi|K^i psi> / <K^(i+1) psi|K^i psi> for i = 0 or 1.
inline long double rayleigh(long double q, int iterations) {
  // sqrt(v) psi = r exp(-(q + 1/2) r)
  const Series source{{{q + 0.5L, 1}, 1.0L}};
  const Series psi{{{q, 1}, 1.0L}};
  const Series u1 = green(source);  // K psi = sqrt(v) u1
  if (iterations == 0) return overlap(psi, psi) / overlap(source, u1);
  const Series vu1 = multiply_by_potential(u1);
  const Series u2 = green(vu1);
  return overlap(vu1, u1) / overlap(vu1, u2);
}

/// Minimum over q of the quotient, and its argument.
inline std::pair<double, double> minimum(int iterations) {
  const auto r = boost::math::tools::brent_find_minima(
      [iterations](long double q) { return rayleigh(q, iterations); }, 0.05L, 5.0L, 40);
  return {static_cast<double>(r.second), static_cast<double>(r.first)};
}

}  // namespace exp_exact
