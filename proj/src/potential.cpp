#include "gcrit/potential.hpp"

#include <algorithm>
#include <cmath>
#include <math.h>  // the pchip header calls isnan unqualified
#include <fstream>
#include <sstream>

#include <boost/math/interpolators/pchip.hpp>

#include "gcrit/errors.hpp"
#include "gcrit/quadrature.hpp"

namespace gcrit {

AngularMomentum::AngularMomentum(int ell) : ell_(ell) {
  if (ell < 0) fail(ErrorKind::InvalidArgument, "angular momentum must be nonnegative");
}

namespace {

// Smallest R with tail of r v beyond R below fraction * total, searched in
// the shape's smooth variable.
double find_effective_range(const PotentialShape& shape) {
  if (auto c = shape.support_cutoff()) return *c;
  QuadratureScheme scheme;
  auto tail = [&](double lower) {
    return integrate_radial(shape, [](double r, double v) { return r * v; }, scheme, lower);
  };
  const double total = tail(0.0);
  if (total == 0.0) return 0.0;
  const double target = shape.tail_fraction() * total;
  double hi = 1.0;
  while (tail(hi) > target) {
    hi *= 2.0;
    if (hi > 1e300) fail(ErrorKind::DivergentMoment, "first moment tail of " + shape.label() + " never decays");
  }
  double lo = hi / 2.0;
  for (int it = 0; it < 40; ++it) {
    const double mid = 0.5 * (lo + hi);
    (tail(mid) > target ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace

PotentialShape::PotentialShape(std::string label, Profile profile, ShapeTraits traits)
    : label_(std::move(label)),
      profile_(std::make_shared<const Profile>(std::move(profile))),
      traits_(std::move(traits)) {
  if (traits_.map_power < 1) fail(ErrorKind::InvalidArgument, "map_power must be >= 1");
  if (!(traits_.tail_fraction > 0.0)) fail(ErrorKind::InvalidArgument, "tail_fraction must be positive");
  std::sort(traits_.split_points.begin(), traits_.split_points.end());
  if (traits_.effective_range) {
    effective_range_ = *traits_.effective_range;
  } else {
    effective_range_ = find_effective_range(*this);
    traits_.effective_range = effective_range_;
  }
  if (traits_.support_cutoff && effective_range_ < *traits_.support_cutoff) {
    effective_range_ = *traits_.support_cutoff;
    traits_.effective_range = effective_range_;
  }
}

double PotentialShape::evaluate(double r) const {
  const double v = (*profile_)(r);
  if (v < 0.0) {
    fail(ErrorKind::NegativeValue, label_ + " is negative (" + std::to_string(v) + ") at r = " + std::to_string(r));
  }
  return v;
}

double PotentialShape::upper_limit() const noexcept {
  return traits_.support_cutoff ? *traits_.support_cutoff : infinity;
}

PotentialShape make_square_well() {
  ShapeTraits t;
  t.support_cutoff = 1.0;
  t.split_points = {1.0};
  t.effective_range = 1.0;
  return PotentialShape("SW", [](double r) { return r < 1.0 ? 1.0 : 0.0; }, t);
}

PotentialShape make_exponential() {
  return PotentialShape("E", [](double r) { return std::exp(-r); }, ShapeTraits{});
}

PotentialShape make_r_exponential() {
  ShapeTraits t;
  t.origin_exponent = 1.0;
  return PotentialShape("PE", [](double r) { return r * std::exp(-r); }, t);
}

PotentialShape from_table(std::vector<std::pair<double, double>> samples, std::string label) {
  if (samples.size() < 4) fail(ErrorKind::InvalidArgument, "a tabulated potential needs at least 4 samples");
  std::vector<double> radii;
  std::vector<double> values;
  radii.reserve(samples.size());
  values.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto [r, v] = samples[i];
    if (!std::isfinite(r) || !std::isfinite(v)) fail(ErrorKind::NonFinite, "non-finite table entry");
    if (r < 0.0) fail(ErrorKind::NonMonotonicGrid, "radii must be nonnegative");
    if (i > 0 && !(r > radii.back())) {
      fail(ErrorKind::NonMonotonicGrid, "radii must be strictly increasing (row " + std::to_string(i) + ")");
    }
    if (v < 0.0) fail(ErrorKind::NegativeValue, "tabulated value " + std::to_string(v) + " at r = " + std::to_string(r));
    radii.push_back(r);
    values.push_back(v);
  }
  const double first_r = radii.front();
  const double first_v = values.front();
  const double last_r = radii.back();
  ShapeTraits t;
  t.support_cutoff = last_r;
  t.effective_range = last_r;
  t.split_points = radii;
  auto interpolant = std::make_shared<boost::math::interpolators::pchip<std::vector<double>>>(
      std::move(radii), std::move(values));
  auto profile = [interpolant, first_r, first_v, last_r](double r) {
    if (r > last_r) return 0.0;
    if (r <= first_r) return first_v;
    return std::max(0.0, (*interpolant)(r));
  };
  return PotentialShape(std::move(label), profile, t);
}

std::vector<std::pair<double, double>> read_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot open potential table " + path);
  std::vector<std::pair<double, double>> samples;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    double r = 0.0;
    double v = 0.0;
    if (!(fields >> r)) continue;
    if (!(fields >> v)) {
      fail(ErrorKind::InvalidArgument, path + ":" + std::to_string(line_no) + ": expected two columns");
    }
    samples.emplace_back(r, v);
  }
  return samples;
}

PotentialShape load_table_file(const std::string& path) {
  return from_table(read_table_file(path), "file:" + path);
}

PotentialShape reduce_to_s_wave(const PotentialShape& shape, AngularMomentum ell) {
  if (ell.ell() == 0) return shape;
  const int k = ell.degeneracy();
  const double inv_k = 1.0 / k;
  const double singular = -4.0 * ell.ell() / k;
  const double scale = 1.0 / (static_cast<double>(k) * k);
  auto base = shape;

  ShapeTraits t;
  if (auto c = shape.support_cutoff()) t.support_cutoff = std::pow(*c, k);
  t.effective_range = std::pow(shape.effective_range(), k);
  t.origin_exponent = (shape.origin_exponent() - 4.0 * ell.ell()) / k;
  t.map_power = shape.map_power() * k;
  t.tail_fraction = shape.tail_fraction();
  for (double s : shape.split_points()) t.split_points.push_back(std::pow(s, k));

  auto profile = [base, inv_k, singular, scale](double x) {
    if (x <= 0.0) return base.evaluate(0.0) == 0.0 ? 0.0 : infinity;
    const double v = base.evaluate(std::pow(x, inv_k));
    return v == 0.0 ? 0.0 : scale * v * std::pow(x, singular);
  };
  return PotentialShape("W" + std::to_string(ell.ell()) + "[" + shape.label() + "]", profile, t);
}

}  // namespace gcrit
