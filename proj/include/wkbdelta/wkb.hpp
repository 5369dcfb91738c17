#pragma once

#include <cmath>
#include <string>
#include <type_traits>

#include "wkbdelta/delta.hpp"
#include "wkbdelta/model.hpp"
#include "wkbdelta/polynomial.hpp"

namespace wkbdelta {

enum class HbarOrder { h0, h2, h4 };
enum class IntegralSource { series, quadrature };

std::string_view to_string(HbarOrder order);
HbarOrder hbar_order_from_string(std::string_view name);
std::string_view to_string(IntegralSource source);
IntegralSource integral_source_from_string(std::string_view name);

struct QuantizationConfig {
  HbarOrder hbar_order = HbarOrder::h4;
  int delta_order = 10;
  IntegralSource integral_source = IntegralSource::series;
  PmsMode pms_mode = PmsMode::per_integral;
  double quadrature_tol = 1e-12;
};

// Lambda(E) = J1 - hbar^2/(48 m) J2' + hbar^4/(11520 m^2) J3''' and its E-derivative.
struct LambdaValue {
  double value = 0.0;
  // Exact for the series source; dJ1/dE alone for the quadrature source.
  double derivative = 0.0;
  double error = 0.0;  // propagated quadrature error, 0 for the series source
  // Largest max|Delta| of the approximants used; NaN when no approximant is involved.
  double convergence_gate = NAN;
};

LambdaValue lambda_with_derivative(const PotentialSpec& spec, double energy,
                                   const QuantizationConfig& config = {});
double lambda_of_energy(const PotentialSpec& spec, double energy,
                        const QuantizationConfig& config = {});

// d^k J / dE^k of the approximant for k = 0..order, by exact zeta-derivatives of the series
// composed with the Taylor jet of zeta(E).
std::vector<double> series_energy_derivatives(IntegralKind kind, const PotentialSpec& spec,
                                              double energy, int order,
                                              int delta_order = 10,
                                              PmsMode mode = PmsMode::per_integral);

// pi hbar (n + 1/2) / sqrt(2 m)
double quantization_target(const PotentialSpec& spec, double nu);

struct LevelResult {
  long n = 0;
  double energy = 0.0;
  std::string method;
  double residual = 0.0;  // |Lambda(E) - target|
  int iterations = 0;
  double convergence_gate = NAN;
};

LevelResult solve_level(const PotentialSpec& spec, long n, const QuantizationConfig& config = {});

// E_n ~ e1 nu^(4/3) + e2 nu^(2/3) + e3 + (e4_quantum + e4_anharmonic) nu^(-2/3), nu = n + 1/2.
struct ClosedFormQuartic {
  double e1 = 0.0;
  double e2 = 0.0;
  double e3 = 0.0;
  double e4_quantum = 0.0;     // from the hbar^2 term, proportional to (mu hbar^4 / m^2)^(1/3)
  double e4_anharmonic = 0.0;  // proportional to (m^10 omega^18 / (mu^5 hbar^2))^(1/3)

  // Pure numbers multiplying the parameter combinations.
  double e1_unit = 0.0;
  double e2_unit = 0.0;
  Rational e3_unit;
  double e4_quantum_unit = 0.0;
  double e4_anharmonic_unit = 0.0;

  double e4() const { return e4_quantum + e4_anharmonic; }
};

ClosedFormQuartic quartic_closed_form(const PotentialSpec& spec, int delta_order = 10,
                                      PmsMode mode = PmsMode::per_integral);

template <class T>
T quartic_energy_at(const ClosedFormQuartic& c, const T& nu) {
  T r;
  if constexpr (std::is_floating_point_v<T>) {
    r = std::cbrt(nu);
  } else {
    using std::pow;
    r = pow(nu, 1.0 / 3.0);
  }
  const T r2 = r * r;
  return c.e1 * r2 * r2 + c.e2 * r2 + c.e3 + c.e4() / r2;
}

double quartic_energy_closed_form(const ClosedFormQuartic& coeffs, long n);

// E_n = (alpha1 nu + alpha2 - sqrt(beta1 nu^2 + beta2 nu + beta3))^(-3/2).
struct ClosedFormSextic {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;
  double beta3 = 0.0;
};

ClosedFormSextic sextic_closed_form(const PotentialSpec& spec, int delta_order = 10,
                                    PmsMode mode = PmsMode::per_integral);

// Throws FormulaRangeError when the discriminant is negative or the base is not positive.
double sextic_energy_closed_form(const ClosedFormSextic& coeffs, long n);

// True when beta1 = alpha1^2 and beta2 = 2 alpha1 alpha2 up to rounding, as produced by
// sextic_closed_form. The base of the formula then reduces to
// (alpha2^2 - beta3) / (alpha1 nu + alpha2 + sqrt(...)), which stays accurate for any nu.
bool has_square_structure(const ClosedFormSextic& c);

// The same formula at real nu, without range checks; generic so it can be differentiated.
template <class T>
T sextic_energy_at(const ClosedFormSextic& c, const T& nu) {
  using std::pow;
  using std::sqrt;
  const T root = sqrt((c.beta1 * nu + c.beta2) * nu + c.beta3);
  T num = T(c.alpha2 * c.alpha2 - c.beta3);
  if (!has_square_structure(c))
    num += ((c.alpha1 * c.alpha1 - c.beta1) * nu + (2 * c.alpha1 * c.alpha2 - c.beta2)) * nu;
  return pow(num / (c.alpha1 * nu + c.alpha2 + root), -1.5);
}

}  // namespace wkbdelta
