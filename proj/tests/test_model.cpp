#include <doctest.h>

#include <cmath>

#include "wkbdelta/errors.hpp"
#include "wkbdelta/model.hpp"

using namespace wkbdelta;
using doctest::Approx;

TEST_CASE("potential values") {
  CHECK(evaluate_potential(PotentialSpec::quartic(1, 1, 1, 1), 1.0) == Approx(0.75).epsilon(1e-15));
  CHECK(evaluate_potential(PotentialSpec::quartic(1, 2.5, 0.3, 7), 0.0) == 0.0);
  CHECK(evaluate_potential(PotentialSpec::sextic(1, 1, 1, 1), 1.0) == Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(evaluate_potential(PotentialSpec::harmonic(1, 2, 3), 0.5) == Approx(2.25).epsilon(1e-15));
}

TEST_CASE("potential derivatives against finite differences") {
  for (const auto& spec : {PotentialSpec::quartic(1, 0.7, 1.3, 2.2), PotentialSpec::sextic(1, 1.1, 0.4, 3.0)}) {
    const double x = 0.83, h = 1e-4;
    const double d1 = (evaluate_potential(spec, x + h) - evaluate_potential(spec, x - h)) / (2 * h);
    const double d2 =
        (evaluate_potential(spec, x + h) - 2 * evaluate_potential(spec, x) + evaluate_potential(spec, x - h)) / (h * h);
    CHECK(potential_derivative(spec, x, 1) == Approx(d1).epsilon(1e-7));
    CHECK(potential_derivative(spec, x, 2) == Approx(d2).epsilon(1e-5));
    const double d3 = (potential_derivative(spec, x + h, 2) - potential_derivative(spec, x - h, 2)) / (2 * h);
    CHECK(potential_derivative(spec, x, 3) == Approx(d3).epsilon(1e-7));
  }
}

TEST_CASE("turning amplitude") {
  const TurningData q = turning_amplitude(PotentialSpec::quartic(1, 1, 1, 1), 0.75);
  CHECK(q.amplitude == Approx(1.0).epsilon(1e-14));
  REQUIRE(q.zeta.has_value());
  CHECK(*q.zeta == Approx(1.0).epsilon(1e-14));
  CHECK(turning_amplitude(PotentialSpec::harmonic(1, 1, 1), 2.0).amplitude == Approx(2.0).epsilon(1e-14));
  CHECK(turning_amplitude(PotentialSpec::sextic(1, 1, 1, 1), 2.0 / 3.0).amplitude == Approx(1.0).epsilon(1e-14));
  // Pure anharmonic and weakly coupled limits.
  CHECK(turning_amplitude(PotentialSpec::quartic(1, 1, 0, 4), 1.0).amplitude == Approx(1.0).epsilon(1e-14));
  const auto weak = PotentialSpec::quartic(1, 1, 1, 1e-12);
  CHECK(turning_amplitude(weak, 2.0).amplitude == Approx(2.0).epsilon(1e-9));
  CHECK_THROWS_AS(turning_amplitude(PotentialSpec::quartic(1, 1, 1, 1), 0.0), DomainError);
  CHECK_THROWS_AS(turning_amplitude(PotentialSpec::quartic(1, 1, 1, 1), -1.0), DomainError);
}

TEST_CASE("turning point solves V(A) = E over a wide range") {
  for (const auto& spec : {PotentialSpec::quartic(1, 0.5, 2, 8000), PotentialSpec::sextic(1, 1, 1, 1),
                           PotentialSpec::quartic(1, 1, 1, 1)}) {
    for (double e : {1e-6, 1e-2, 1.0, 1e3, 1e8}) {
      const double a = turning_amplitude(spec, e).amplitude;
      CHECK(evaluate_potential(spec, a) == Approx(e).epsilon(1e-13));
    }
  }
}

TEST_CASE("zeta map and inverse") {
  const auto unit = PotentialSpec::quartic(1, 1, 1, 1);
  CHECK(zeta_from_energy(unit, 0.75) == Approx(1.0).epsilon(1e-14));
  CHECK(zeta_from_energy(unit, 3.0) == Approx((1 + std::sqrt(13.0)) / 12).epsilon(1e-14));
  double previous = INFINITY;
  for (double e = 0.01; e < 1e6; e *= 3) {
    const double z = zeta_from_energy(unit, e);
    CHECK(z < previous);
    CHECK(z > 0);
    previous = z;
  }
  CHECK(energy_from_zeta(unit, 1.0) == Approx(0.75).epsilon(1e-14));
  CHECK(energy_from_zeta(unit, 2.0) == Approx(0.3125).epsilon(1e-14));
  const auto set1 = PotentialSpec::quartic(1, 0.5, 2, 8000);
  for (double e : {0.1, 10.0, 1e4}) CHECK(energy_from_zeta(set1, zeta_from_energy(set1, e)) == Approx(e).epsilon(1e-12));
  CHECK(anharmonicity(unit, 1.0) == Approx(1.0));
  CHECK_THROWS_AS(zeta_from_energy(PotentialSpec::sextic(1, 1, 1, 1), 1.0), UnsupportedMapError);
  CHECK_THROWS_AS(zeta_from_energy(PotentialSpec::quartic(1, 1, 0, 1), 1.0), UnsupportedMapError);
  CHECK_THROWS_AS(energy_from_zeta(unit, 0.0), DomainError);
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(PotentialSpec::quartic(0, 1, 1, 1).validate(), DomainError);
  CHECK_THROWS_AS(PotentialSpec::quartic(1, -1, 1, 1).validate(), DomainError);
  CHECK_THROWS_AS(PotentialSpec::quartic(1, 1, 1, 0).validate(), DomainError);
  CHECK_THROWS_AS(PotentialSpec::sextic(1, 1, 0, -2).validate(), DomainError);
  CHECK_NOTHROW(PotentialSpec::quartic(1, 1, 0, 4).validate());
  CHECK(family_from_string(to_string(Family::sextic)) == Family::sextic);
  CHECK_THROWS_AS(family_from_string("octic"), InputError);
}

TEST_CASE("harmonic references") {
  const auto h = PotentialSpec::harmonic(1.5, 2, 0.5);
  CHECK(harmonic_reference::level(h, 3) == Approx(1.5 * 0.5 * 3.5));
  CHECK(harmonic_reference::action(h, 2.0) == Approx(M_PI * 2 / (0.5 * std::sqrt(4.0))));
}
