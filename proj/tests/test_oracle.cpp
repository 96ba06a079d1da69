#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <boost/math/special_functions/bessel.hpp>

#include "gcrit/errors.hpp"
#include "gcrit/oracle.hpp"
#include "gcrit/sequences.hpp"

using namespace gcrit;

TEST_CASE("shooting classifies sub- and supercritical strengths") {
  const auto sw = make_square_well();
  const auto weak = shoot(sw, AngularMomentum(0), 1.0);
  CHECK(weak.nodes == 0);
  CHECK(weak.tail_sign() > 0);
  CHECK_FALSE(weak.supercritical());
  CHECK(shoot(sw, AngularMomentum(0), 4.0).supercritical());
  for (int l = 0; l <= 3; ++l) {
    const auto free = shoot(make_exponential(), AngularMomentum(l), 0.0);
    CHECK(free.nodes == 0);
    CHECK(free.tail_coefficient == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("node count grows with the strength") {
  int previous = 0;
  for (double g = 0.5; g < 200.0; g *= 1.3) {
    const int nodes = shoot(make_square_well(), AngularMomentum(0), g).nodes;
    CHECK(nodes >= previous);
    previous = nodes;
  }
  CHECK(previous >= 3);
}

TEST_CASE("critical strengths") {
  CHECK(std::abs(critical_g(make_square_well(), AngularMomentum(0)) - 2.4674) < 1.5e-4);
  CHECK(std::abs(critical_g(make_r_exponential(), AngularMomentum(0)) - 0.67668) < 1.5e-5);
  CHECK(std::abs(critical_g(make_square_well(), AngularMomentum(5)) - 66.954) < 1.5e-3);
}

TEST_CASE("closed forms") {
  CHECK(bessel_j(0.0, 2.4) > 0.0);
  CHECK(bessel_j(0.0, 2.5) < 0.0);
  CHECK(square_well_closed_form(AngularMomentum(0)) == doctest::Approx(M_PI * M_PI / 4.0).epsilon(1e-14));
  CHECK(square_well_closed_form(AngularMomentum(1)) == doctest::Approx(M_PI * M_PI).epsilon(1e-14));
  CHECK(std::abs(square_well_closed_form(AngularMomentum(2)) - 20.191) < 1.5e-3);
  CHECK(std::abs(exponential_closed_form() - 1.4458) < 1.5e-4);
  for (double nu : {-0.5, 0.0, 0.5, 1.5, 2.5, 3.5, 4.5}) {
    const double z = boost::math::cyl_bessel_j_zero(nu, 1);
    CHECK(first_bessel_zero(nu) == doctest::Approx(z).epsilon(1e-13));
    for (double x : {0.3, 1.7, 5.2, 9.9}) {
      CHECK(bessel_j(nu, x) == doctest::Approx(boost::math::cyl_bessel_j(nu, x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("shooting agrees with the closed forms") {
  for (int l = 0; l <= 5; ++l) {
    const double exact = square_well_closed_form(AngularMomentum(l));
    CHECK(std::abs(critical_g(make_square_well(), AngularMomentum(l)) / exact - 1.0) < 1e-8);
  }
  CHECK(std::abs(critical_g(make_exponential(), AngularMomentum(0)) / exponential_closed_form() - 1.0) < 1e-8);
}

TEST_CASE("S-wave reduction preserves the critical strength") {
  for (const auto& shape : {make_exponential(), make_r_exponential(), make_square_well()}) {
    for (int l = 1; l <= 5; ++l) {
      const AngularMomentum ell(l);
      const double direct = critical_g(shape, ell);
      const double reduced = critical_g(reduce_to_s_wave(shape, ell), AngularMomentum(0));
      CAPTURE(shape.label());
      CAPTURE(l);
      CHECK(std::abs(reduced / direct - 1.0) < 1e-6);
    }
  }
}

TEST_CASE("every sequence brackets the oracle") {
  SequenceOptions o;
  o.n_max = 6;
  o.stop_tolerance = 0.0;
  for (const auto& shape : {make_exponential(), make_r_exponential(), make_square_well()}) {
    for (int l = 0; l <= 5; ++l) {
      const AngularMomentum ell(l);
      const double gc = critical_g(shape, ell);
      const double slack = 1e-8 * gc;
      const auto ao = alpha_omega(shape, ell, o);
      const auto k = kellogg_sequence(shape, ell, o);
      const auto b = kolomy_sequence(shape, ell, o);
      const auto p = power_sequence(shape, ell, o);
      for (int n = 1; n <= 6; ++n) {
        CHECK(ao.alpha.bound(n) <= gc + slack);
        CHECK(ao.omega.bound(n) >= gc - slack);
        CHECK(k.bound(n) >= gc - slack);
        CHECK(b.bound(n) >= gc - slack);
        CHECK(p.bound(n - 1) >= gc - slack);
      }
    }
  }
}

TEST_CASE("configuration errors") {
  ShootingConfig c;
  c.g_cap = 1.5;
  try {
    critical_g(make_square_well(), AngularMomentum(3), c);
    FAIL("cap ignored");
  } catch (const NumericError& e) {
    CHECK(e.kind() == ErrorKind::BracketFailure);
  }
  ShootingConfig bad;
  bad.r_start = -1.0;
  CHECK_THROWS_AS(bad.validate(), NumericError);
  bad = ShootingConfig{};
  bad.r_end = 0.5;
  CHECK_THROWS_AS(shoot(make_square_well(), AngularMomentum(0), 1.0, bad), NumericError);
}
