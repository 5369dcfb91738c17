#include <doctest.h>

#include <cmath>

#include "wkbdelta/errors.hpp"
#include "wkbdelta/zeta.hpp"

using namespace wkbdelta;
using doctest::Approx;

TEST_CASE("pure quartic Z(1)") {
  const auto pure = PotentialSpec::quartic(1, 1, 0, 4);
  const ZetaEstimate z4 = zeta_hybrid(pure, 1.0, 4);
  CHECK(std::abs(z4.value - 3.635002) < 1e-6);
  CHECK(z4.head + z4.tail == Approx(z4.value).epsilon(1e-15));
  CHECK(z4.tail_bound < 1e-8);
  CHECK(quartic_zeta_one_exact(pure) == Approx(3.63500364488).epsilon(1e-11));
  const ZetaEstimate z8 = zeta_hybrid(pure, 1.0, 8);
  CHECK(std::abs(z8.value - z4.value) < 2e-6);
  // More oracle levels move the estimate toward the exact value.
  const double exact = quartic_zeta_one_exact(pure);
  CHECK(std::abs(zeta_hybrid(pure, 1.0, 16).value - exact) < std::abs(z4.value - exact));
  // Scaling with the coupling: E ~ mu^(1/3).
  const auto stiff = PotentialSpec::quartic(1, 1, 0, 32);
  CHECK(zeta_hybrid(stiff, 1.0, 4).value == Approx(z4.value / 2).epsilon(1e-10));
}

TEST_CASE("harmonic sum") {
  const auto h = PotentialSpec::harmonic(1, 1, 1);
  CHECK(zeta_hybrid(h, 2.0, 4, 1e-6).value == Approx(M_PI * M_PI / 2).epsilon(1e-6));
  CHECK(std::abs(zeta_hybrid(h, 2.0, 32, 1e-10).value - M_PI * M_PI / 2) < 1e-10);
  CHECK(harmonic_zeta_exact(h, 2.0) == Approx(M_PI * M_PI / 2).epsilon(1e-15));
  const auto g = PotentialSpec::harmonic(0.5, 3, 1.6);
  CHECK(zeta_hybrid(g, 3.0, 16, 1e-10).value == Approx(harmonic_zeta_exact(g, 3.0)).epsilon(1e-10));
}

TEST_CASE("anharmonic families with omega") {
  const auto s = PotentialSpec::sextic(1, 1, 1, 1);
  const ZetaEstimate a = zeta_hybrid(s, 1.5, 8, 1e-6);
  const ZetaEstimate b = zeta_hybrid(s, 1.5, 16, 1e-6);
  // The tail rests on the closed-form sextic levels, good to about 1e-4.
  CHECK(std::abs(a.value / b.value - 1) < 1e-4);
  const auto q = PotentialSpec::quartic(1, 1, 1, 1);
  CHECK(std::abs(zeta_hybrid(q, 1.0, 6).value - zeta_hybrid(q, 1.0, 12).value) < 1e-5);
}

TEST_CASE("zeta errors") {
  const auto pure = PotentialSpec::quartic(1, 1, 0, 4);
  CHECK(zeta_threshold(pure) == 0.75);
  CHECK_THROWS_AS(zeta_hybrid(pure, 0.75, 4), DivergenceError);
  CHECK_THROWS_AS(zeta_hybrid(PotentialSpec::sextic(1, 1, 1, 1), 0.6, 4), DivergenceError);
  CHECK_THROWS_AS(zeta_hybrid(PotentialSpec::harmonic(1, 1, 1), 1.0, 4), DivergenceError);
  CHECK_THROWS_AS(zeta_hybrid(pure, 1.0, 0), DomainError);
  CHECK_THROWS_AS(zeta_hybrid(pure, 1.0, 1, 1e-15), AccuracyError);
  CHECK_THROWS_AS(quartic_zeta_one_exact(PotentialSpec::quartic(1, 1, 1, 4)), UnsupportedMapError);
}
