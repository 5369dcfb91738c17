#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>

namespace wkbdelta {

enum class Family { harmonic, quartic, sextic };

std::string_view to_string(Family family);
Family family_from_string(std::string_view name);

// V(x) = m omega^2 x^2 / 2 + coupling x^(2d) / (2d), d = 2 (quartic) or 3 (sextic).
// The harmonic family is the coupling-free reference branch: coupling is zero there and
// every downstream module treats it with exact closed forms.
struct PotentialSpec {
  Family family = Family::quartic;
  double hbar = 1.0;
  double mass = 1.0;
  double omega = 1.0;
  double coupling = 1.0;

  static PotentialSpec quartic(double hbar, double mass, double omega, double mu);
  static PotentialSpec sextic(double hbar, double mass, double omega, double rho);
  static PotentialSpec harmonic(double hbar, double mass, double omega);
  static PotentialSpec unit(Family family);

  // Throws DomainError when an invariant is broken.
  void validate() const;

  bool operator==(const PotentialSpec&) const = default;
};

// Power d of the anharmonic term x^(2d); 1 for the harmonic branch.
int anharmonic_degree(const PotentialSpec& spec);

template <class Scalar>
Scalar evaluate_potential(const PotentialSpec& spec, const Scalar& x) {
  const Scalar x2 = x * x;
  Scalar v = 0.5 * spec.mass * spec.omega * spec.omega * x2;
  switch (spec.family) {
    case Family::harmonic:
      break;
    case Family::quartic:
      v += 0.25 * spec.coupling * x2 * x2;
      break;
    case Family::sextic:
      v += spec.coupling / 6.0 * x2 * x2 * x2;
      break;
  }
  return v;
}

// k-th derivative of V, k in {1, 2, 3}.
template <class Scalar>
Scalar potential_derivative(const PotentialSpec& spec, const Scalar& x, int k) {
  const double mw2 = spec.mass * spec.omega * spec.omega;
  const int d = anharmonic_degree(spec);
  const double c = spec.family == Family::harmonic ? 0.0 : spec.coupling;
  // d^k/dx^k of c x^(2d)/(2d)
  auto anharmonic = [&](int order) -> Scalar {
    double factor = c / (2.0 * d);
    int power = 2 * d;
    for (int i = 0; i < order; ++i) factor *= (power - i);
    Scalar r = factor;
    for (int i = 0; i < power - order; ++i) r *= x;
    return r;
  };
  switch (k) {
    case 1:
      return mw2 * x + anharmonic(1);
    case 2:
      return Scalar(mw2) + anharmonic(2);
    case 3:
      return anharmonic(3);
    default:
      return Scalar(0);
  }
}

struct TurningData {
  double energy = 0.0;
  double amplitude = 0.0;           // x+- = +-amplitude
  std::optional<double> zeta;       // m omega^2 / (mu A^2); quartic family with omega > 0
};

double evaluate_potential(const PotentialSpec& spec, double x);

TurningData turning_amplitude(const PotentialSpec& spec, double energy);

// zeta = (m^2 w^4 / 4 mu E) [1 + sqrt(1 + 4 mu E / (m^2 w^4))]; quartic, omega > 0.
double zeta_from_energy(const PotentialSpec& spec, double energy);
double energy_from_zeta(const PotentialSpec& spec, double zeta);

// Dimensionless anharmonicity m omega^2 / (coupling A^(2d-2)) for either anharmonic
// family. Coincides with zeta for the quartic.
double anharmonicity(const PotentialSpec& spec, double amplitude);

// Natural units of the pure anharmonic problem: length L with L^(2d+2) = hbar^2/(m c),
// energy c L^(2d), and the harmonic strength m omega^2 L^2 in those energy units.
struct AnharmonicScales {
  double length;
  double energy;
  double reduced_omega_squared;
};
AnharmonicScales anharmonic_scales(const PotentialSpec& spec);

// Exact results for the harmonic branch.
namespace harmonic_reference {
double level(const PotentialSpec& spec, long n);
double action(const PotentialSpec& spec, double energy);  // J1
double j2(const PotentialSpec& spec);
double j3(const PotentialSpec& spec);
}  // namespace harmonic_reference

}  // namespace wkbdelta
