#include "wkbdelta/model.hpp"

#include <numbers>

#include "wkbdelta/errors.hpp"

namespace wkbdelta {

std::string_view to_string(Family family) {
  switch (family) {
    case Family::harmonic:
      return "harmonic";
    case Family::quartic:
      return "quartic";
    case Family::sextic:
      return "sextic";
  }
  return "unknown";
}

Family family_from_string(std::string_view name) {
  if (name == "quartic") return Family::quartic;
  if (name == "sextic") return Family::sextic;
  if (name == "harmonic") return Family::harmonic;
  throw DomainError("unknown potential family '" + std::string(name) + "'");
}

PotentialSpec PotentialSpec::quartic(double hbar, double mass, double omega, double mu) {
  PotentialSpec s{Family::quartic, hbar, mass, omega, mu};
  s.validate();
  return s;
}

PotentialSpec PotentialSpec::sextic(double hbar, double mass, double omega, double rho) {
  PotentialSpec s{Family::sextic, hbar, mass, omega, rho};
  s.validate();
  return s;
}

PotentialSpec PotentialSpec::harmonic(double hbar, double mass, double omega) {
  PotentialSpec s{Family::harmonic, hbar, mass, omega, 0.0};
  s.validate();
  return s;
}

PotentialSpec PotentialSpec::unit(Family family) {
  PotentialSpec s{family, 1.0, 1.0, 1.0, family == Family::harmonic ? 0.0 : 1.0};
  return s;
}

void PotentialSpec::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(hbar)) throw DomainError("hbar must be positive");
  if (!positive(mass)) throw DomainError("mass must be positive");
  if (!std::isfinite(omega) || omega < 0.0) throw DomainError("omega must be nonnegative");
  switch (family) {
    case Family::harmonic:
      if (coupling != 0.0) throw DomainError("harmonic branch carries no coupling");
      if (omega <= 0.0) throw DomainError("harmonic branch needs omega > 0");
      break;
    case Family::quartic:
      if (!positive(coupling)) throw DomainError("quartic coupling mu must be positive");
      break;
    case Family::sextic:
      if (!positive(coupling)) throw DomainError("sextic coupling rho must be positive");
      if (omega <= 0.0) throw DomainError("omega = 0 is only supported for the quartic family");
      break;
  }
}

int anharmonic_degree(const PotentialSpec& spec) {
  switch (spec.family) {
    case Family::harmonic:
      return 1;
    case Family::quartic:
      return 2;
    case Family::sextic:
      return 3;
  }
  return 1;
}

double evaluate_potential(const PotentialSpec& spec, double x) {
  return evaluate_potential<double>(spec, x);
}

namespace {

// Positive root s = A^2 of c s^d / (2d) + m w^2 s / 2 = E for d = 3. The left side is
// convex and increasing, so Newton started above the root decreases monotonically.
double sextic_amplitude_squared(const PotentialSpec& spec, double energy) {
  const double mw2 = spec.mass * spec.omega * spec.omega;
  const double c = spec.coupling;
  double s = std::cbrt(6.0 * energy / c);
  if (mw2 > 0.0) s = std::min(s, 2.0 * energy / mw2);
  for (int it = 0; it < 200; ++it) {
    const double f = c * s * s * s / 6.0 + 0.5 * mw2 * s - energy;
    const double df = 0.5 * c * s * s + 0.5 * mw2;
    const double next = s - f / df;
    if (!(next < s)) break;
    s = next;
  }
  return s;
}

}  // namespace

TurningData turning_amplitude(const PotentialSpec& spec, double energy) {
  if (!(energy > 0.0) || !std::isfinite(energy)) throw DomainError("energy must be positive");
  const double mw2 = spec.mass * spec.omega * spec.omega;
  TurningData out;
  out.energy = energy;
  double a2 = 0.0;
  switch (spec.family) {
    case Family::harmonic:
      a2 = 2.0 * energy / mw2;
      break;
    case Family::quartic:
      // Rationalised root of mu s^2/4 + m w^2 s/2 = E; no cancellation as E -> 0.
      a2 = 2.0 * energy / (0.5 * mw2 + std::sqrt(0.25 * mw2 * mw2 + spec.coupling * energy));
      break;
    case Family::sextic:
      a2 = sextic_amplitude_squared(spec, energy);
      break;
  }
  out.amplitude = std::sqrt(a2);
  if (spec.family == Family::quartic && spec.omega > 0.0) out.zeta = mw2 / (spec.coupling * a2);
  return out;
}

double zeta_from_energy(const PotentialSpec& spec, double energy) {
  if (spec.family != Family::quartic || !(spec.omega > 0.0))
    throw UnsupportedMapError("the zeta(E) map needs the quartic family with omega > 0");
  if (!(energy > 0.0)) throw DomainError("energy must be positive");
  const double mw2 = spec.mass * spec.omega * spec.omega;
  const double r = 4.0 * spec.coupling * energy / (mw2 * mw2);
  return (1.0 + std::sqrt(1.0 + r)) / r;
}

double energy_from_zeta(const PotentialSpec& spec, double zeta) {
  if (spec.family != Family::quartic || !(spec.omega > 0.0))
    throw UnsupportedMapError("the E(zeta) map needs the quartic family with omega > 0");
  if (!(zeta > 0.0)) throw DomainError("zeta must be positive");
  const double mw2 = spec.mass * spec.omega * spec.omega;
  return mw2 * mw2 / (4.0 * spec.coupling) * (2.0 / zeta + 1.0 / (zeta * zeta));
}

double anharmonicity(const PotentialSpec& spec, double amplitude) {
  if (spec.family == Family::harmonic)
    throw UnsupportedMapError("the harmonic branch has no anharmonicity variable");
  if (!(spec.omega > 0.0)) throw UnsupportedMapError("anharmonicity variable needs omega > 0");
  const int d = anharmonic_degree(spec);
  return spec.mass * spec.omega * spec.omega /
         (spec.coupling * std::pow(amplitude, 2.0 * d - 2.0));
}

AnharmonicScales anharmonic_scales(const PotentialSpec& spec) {
  if (spec.family == Family::harmonic)
    throw UnsupportedMapError("the harmonic branch has no anharmonic scales");
  const double d = anharmonic_degree(spec);
  const double c = spec.coupling;
  const double length = std::pow(spec.hbar * spec.hbar / (spec.mass * c), 1.0 / (2.0 * d + 2.0));
  const double energy = c * std::pow(length, 2.0 * d);
  const double w2 = spec.mass * spec.omega * spec.omega * length * length / energy;
  return {length, energy, w2};
}

namespace harmonic_reference {

double level(const PotentialSpec& spec, long n) {
  return spec.hbar * spec.omega * (static_cast<double>(n) + 0.5);
}

double action(const PotentialSpec& spec, double energy) {
  return std::numbers::pi * energy / (spec.omega * std::sqrt(2.0 * spec.mass));
}

double j2(const PotentialSpec& spec) {
  return std::numbers::pi * spec.omega * std::sqrt(2.0 * spec.mass);
}

double j3(const PotentialSpec& spec) {
  // 7 (m w^2)^2 * pi sqrt(2 / (m w^2))
  const double mw2 = spec.mass * spec.omega * spec.omega;
  return 7.0 * mw2 * mw2 * std::numbers::pi * std::sqrt(2.0 / mw2);
}

}  // namespace harmonic_reference

}  // namespace wkbdelta
