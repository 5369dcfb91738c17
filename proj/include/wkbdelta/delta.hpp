#pragma once

#include <optional>
#include <vector>

#include "wkbdelta/model.hpp"
#include "wkbdelta/polynomial.hpp"
#include "wkbdelta/quadrature.hpp"

namespace wkbdelta {

// How the interpolating frequency shift lambda^2 in V0 = (m w^2 + lambda^2) x^2 / 2 is chosen
// when it is fixed by first-order stationarity.
enum class PmsMode {
  per_integral,  // each of J1, J2, J3 is stationary in its own lambda
  shared_j1,     // all three integrals reuse the lambda that makes J1 stationary
};

struct InterpolationConfig {
  int delta_order = 10;                  // truncation order N of the binomial expansion
  std::optional<double> lambda_squared;  // fixed numeric lambda^2; empty selects first-order PMS
  PmsMode pms_mode = PmsMode::per_integral;
};

// Delta(x) = [E - E0 - V(x) + V0(x)] / [E0 - V0(x)] after the common factor (A^2 - x^2)
// has been cancelled: a polynomial in x^2, coefficients lowest power first.
struct DeltaPolynomial {
  std::vector<double> coefficients;

  double operator()(double x) const;
  // max |Delta| over `points` equally spaced x in [-A, A].
  double max_abs(double amplitude, int points = 200) const;
};

DeltaPolynomial build_delta(const PotentialSpec& spec, double amplitude, double lambda_squared);

struct PmsResult {
  double lambda_squared = 0.0;
  // lambda^2 / (coupling A^(2d-2)) when it does not depend on the anharmonicity (J1).
  std::optional<Rational> ratio;
  // Scale-free stationarity residual lambda (dJ/dlambda) / J of the first-order value.
  double residual = 0.0;
  double first_order_value = 0.0;
  int order_used = 1;
};

PmsResult pms_first_order(IntegralKind kind, const PotentialSpec& spec, double amplitude);

struct Radical {
  RationalPolynomial base;  // primitive integer polynomial in zeta
  Rational power;

  bool operator==(const Radical&) const = default;
};

// Closed-form approximant
//   C * pi^k * m^a * omega^b * coupling^c * zeta^p * prod_i base_i(zeta)^q_i * sum_n c_n zeta^n
// with C = prefactor * sqrt(prefactor_radicand). Every rational is exact.
struct RadicalSeries {
  Family family = Family::quartic;
  IntegralKind kind = IntegralKind::J1;
  int delta_order = 0;
  int derivative_order = 0;  // d^k/dzeta^k already applied

  Rational prefactor{1};
  Rational prefactor_radicand{1};
  int pi_power = 1;
  Rational mass_power;
  Rational omega_power;
  Rational coupling_power;
  Rational zeta_power;
  std::vector<Radical> radicals;
  RationalPolynomial coefficients;

  // u(zeta) = shift_numerator / shift_denominator; lambda^2 = (u - zeta) coupling A^(2d-2).
  RationalPolynomial shift_numerator;
  RationalPolynomial shift_denominator;

  bool operator==(const RadicalSeries&) const = default;

  // Radical with this exact base, if present.
  const Radical* find_radical(const RationalPolynomial& base) const;
};

// Binomial delta-expansion of `kind` to order config.delta_order, each term integrated with
// the Wallis moments and collected over a common radical. Throws NotImplementedError for the
// harmonic branch, which has no anharmonicity variable.
RadicalSeries expand_integral(IntegralKind kind, const PotentialSpec& spec, double amplitude,
                              const InterpolationConfig& config = {});

// Parameter-free PMS series for a family, built once per argument tuple and shared.
const RadicalSeries& standard_series(Family family, IntegralKind kind, int delta_order = 10,
                                     PmsMode mode = PmsMode::per_integral,
                                     int derivative_order = 0);

long double evaluate_series_ld(const RadicalSeries& series, const PotentialSpec& spec,
                               long double zeta);
double evaluate_series(const RadicalSeries& series, const PotentialSpec& spec, double zeta);

// Exact d^k/dzeta^k. The family of RadicalSeries is closed under differentiation, so the
// result is a single series.
RadicalSeries differentiate_series(const RadicalSeries& series, int order);

// Uniform-convergence diagnostic: max |Delta| over a 200-point grid between the turning
// points at the series' own lambda, evaluated at anharmonicity zeta.
double max_abs_delta(const RadicalSeries& series, double zeta, int points = 200);
double lambda_ratio(const RadicalSeries& series, double zeta);

// Anharmonicity variable of the series at energy E (zeta of the quartic map).
double series_variable(const PotentialSpec& spec, double energy);

// zeta -> 0 behaviour of a series written as A^k F(zeta): F(0) and the normalised rational
// Taylor coefficients F(zeta)/F(0) up to `order`. Used to build the closed-form spectra.
struct ZeroExpansion {
  double leading = 0.0;
  RationalPolynomial normalized;
};
ZeroExpansion expand_at_zero(const RadicalSeries& series, std::size_t order);

}  // namespace wkbdelta
