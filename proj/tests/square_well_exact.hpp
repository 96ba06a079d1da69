#pragma once

// Independent reference for the unit square well: every iterate of the
// l-wave recursion started from r^(l+1) is a polynomial on [0, 1], so the
// sequences follow from exact monomial integrals (long double coefficients).

#include <cmath>
#include <map>
#include <vector>

namespace sw_exact {

using Poly = std::map<int, long double>;  // exponent -> coefficient

inline Poly apply(const Poly& u, int ell) {
  // (2l+1)^-1 [r^-l int_0^r s^(l+1) u + r^(l+1) int_r^1 s^-l u]
  Poly out;
  const long double k = 2 * ell + 1;
  for (const auto& [j, c] : u) {
    out[j + 2] += c / (ell + j + 2) / k;
    out[ell + 1] += c / (j - ell + 1) / k;
    out[j + 2] -= c / (j - ell + 1) / k;
  }
  return out;
}

inline long double inner(const Poly& a, const Poly& b) {
  long double sum = 0.0L;
  for (const auto& [i, ci] : a) {
    for (const auto& [j, cj] : b) sum += ci * cj / (i + j + 1);
  }
  return sum;
}

struct Ladder {
  std::vector<Poly> u;
  int ell;

  Ladder(int l, int count) : ell(l) {
    u.push_back(Poly{{l + 1, 1.0L}});
    for (int n = 0; n < count; ++n) u.push_back(sw_exact::apply(u.back(), l));
  }

  // <phi|K^j phi>
  long double moment(int j) const { return inner(u[j / 2], u[j - j / 2]); }

  double gamma(int n) const { return static_cast<double>(std::sqrt(inner(u[n - 1], u[n - 1]) / inner(u[n], u[n]))); }
  double beta(int n) const { return static_cast<double>(inner(u[n - 1], u[n]) / inner(u[n], u[n])); }
  double inverse_delta(int n) const { return static_cast<double>(moment(n) / moment(n + 1)); }
  // omega_n = delta_(n-1)
  double inverse_omega(int n) const { return inverse_delta(n - 1); }
};

// In the S-wave reduction psi_n(x) = r^l u_n(r) with x = r^(2l+1), so
// alpha_n = int W psi_n / int W psi_(n-1) = int r^(-l) u_n / int r^(-l) u_(n-1)
// over [0, 1] (the Jacobian factors cancel in the ratio).
inline double inverse_alpha(const Ladder& ladder, int n) {
  auto slope = [&](int m) {
    long double s = 0.0L;
    for (const auto& [j, c] : ladder.u[m]) s += c / (j - ladder.ell + 1);
    return s;
  };
  return static_cast<double>(slope(n - 1) / slope(n));
}

}  // namespace sw_exact
