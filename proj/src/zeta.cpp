#include "wkbdelta/zeta.hpp"

#include <array>
#include <boost/math/differentiation/autodiff.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>

#include "wkbdelta/errors.hpp"
#include "wkbdelta/oracle.hpp"
#include "wkbdelta/wkb.hpp"

namespace wkbdelta {

namespace {

constexpr int kCorrections = 4;
using Jet = boost::math::differentiation::autodiff_v1::detail::fvar<double, 2 * kCorrections + 1>;

// B_{2j} / (2j)! for j = 1..5.
constexpr std::array<double, kCorrections + 1> kBernoulliOverFactorial = {
    1.0 / 6.0 / 2.0, -1.0 / 30.0 / 24.0, 1.0 / 42.0 / 720.0, -1.0 / 30.0 / 40320.0, 5.0 / 66.0 / 3628800.0};

// Closed-form E(nu) for the tail, usable on doubles and on autodiff jets, plus its growth
// exponent gamma in E ~ nu^gamma.
struct TailSpectrum {
  std::function<double(double)> energy;
  std::function<Jet(const Jet&)> energy_jet;
  double gamma;
};

TailSpectrum tail_spectrum(const PotentialSpec& spec) {
  switch (spec.family) {
    case Family::harmonic: {
      const double w = spec.hbar * spec.omega;
      return {[w](double nu) { return w * nu; }, [w](const Jet& nu) { return w * nu; }, 1.0};
    }
    case Family::quartic: {
      const ClosedFormQuartic c = quartic_closed_form(spec);
      return {[c](double nu) { return quartic_energy_at(c, nu); },
              [c](const Jet& nu) { return quartic_energy_at(c, nu); }, 4.0 / 3.0};
    }
    case Family::sextic: {
      const ClosedFormSextic c = sextic_closed_form(spec);
      return {[c](double nu) { return sextic_energy_at(c, nu); },
              [c](const Jet& nu) { return sextic_energy_at(c, nu); }, 1.5};
    }
  }
  throw DomainError("unknown family");
}

}  // namespace

double zeta_threshold(const PotentialSpec& spec) {
  switch (spec.family) {
    case Family::harmonic:
      return 1.0;
    case Family::quartic:
      return 0.75;
    case Family::sextic:
      return 2.0 / 3.0;
  }
  return 1.0;
}

namespace {

std::string show(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

ZetaEstimate zeta_hybrid(const PotentialSpec& spec, double s, int k_numeric, double tol) {
  spec.validate();
  if (!std::isfinite(s) || s <= zeta_threshold(spec))
    throw DivergenceError("Z(s) diverges for s <= " + show(zeta_threshold(spec)));
  if (k_numeric < 1) throw DomainError("k_numeric must be at least 1");
  if (!(tol > 0.0)) throw DomainError("tol must be positive");

  ZetaEstimate out;
  out.s = s;
  out.k_numeric = k_numeric;

  if (spec.family == Family::harmonic) {
    for (int n = 0; n < k_numeric; ++n) out.head += std::pow(harmonic_reference::level(spec, n), -s);
  } else {
    const OracleSpectrum o = exact_spectrum(spec, k_numeric - 1, 1e-11);
    for (int n = 0; n < k_numeric; ++n) out.head += std::pow(o.energies[static_cast<std::size_t>(n)], -s);
  }

  const TailSpectrum t = tail_spectrum(spec);
  const double nu0 = k_numeric + 0.5;

  // int_{nu0}^inf E^-s dnu with nu = nu0 t^-q, q = 1/(gamma s - 1): the integrand
  // q nu0 (nu0^gamma E(nu) / nu^gamma)^-s stays bounded on (0, 1]. Beyond nu ~ 1e100 the
  // ratio E / nu^gamma has reached its limit in double precision.
  const double q = 1.0 / (t.gamma * s - 1.0);
  auto integrand = [&](double u) {
    const double nu = u > 0.0 ? std::min(nu0 * std::pow(u, -q), 1e100) : 1e100;
    return q * nu0 * std::pow(std::pow(nu0 / nu, t.gamma) * t.energy(nu), -s);
  };
  boost::math::quadrature::tanh_sinh<double> integrator;
  double integral_error = 0.0;
  const double integral = integrator.integrate(integrand, 0.0, 1.0, 1e-14, &integral_error);

  // f(n) = E(n + 1/2)^-s; the jet carries f^(9) for the first omitted correction.
  const Jet x = boost::math::differentiation::make_fvar<double, 2 * kCorrections + 1>(nu0);
  const Jet f = pow(t.energy_jet(x), -s);
  double corrections = 0.5 * f.derivative(0);
  for (int j = 1; j <= kCorrections; ++j)
    corrections -= kBernoulliOverFactorial[static_cast<std::size_t>(j - 1)] *
                   f.derivative(static_cast<std::size_t>(2 * j - 1));
  const double next = kBernoulliOverFactorial[kCorrections] * f.derivative(2 * kCorrections + 1);

  out.tail = integral + corrections;
  out.tail_bound = std::abs(next) + integral_error;
  out.value = out.head + out.tail;
  if (out.tail_bound > tol)
    throw AccuracyError("zeta tail bound " + show(out.tail_bound) + " exceeds tol " + show(tol), out.value,
                        out.tail_bound);
  return out;
}

double quartic_zeta_one_exact(const PotentialSpec& spec) {
  spec.validate();
  if (spec.family != Family::quartic || spec.omega != 0.0)
    throw UnsupportedMapError("the exact Z(1) is known for the pure quartic (omega = 0) only");
  const double g = boost::math::tgamma(1.0 / 3.0);
  const double z_ref = std::cbrt(9.0) * std::pow(g, 5) / (8.0 * std::numbers::pi * std::numbers::pi);
  // E_n scales with (mu hbar^4 / m^2)^(1/3); the reference has mu = 4, hbar = m = 1.
  const double scale = std::cbrt(spec.coupling * std::pow(spec.hbar, 4) / (spec.mass * spec.mass) / 4.0);
  return z_ref / scale;
}

double harmonic_zeta_exact(const PotentialSpec& spec, double s) {
  if (spec.family != Family::harmonic) throw UnsupportedMapError("harmonic_zeta_exact needs the harmonic branch");
  if (!(s > 1.0)) throw DivergenceError("Z(s) diverges for s <= 1");
  return (std::exp2(s) - 1.0) * boost::math::zeta(s) / std::pow(spec.hbar * spec.omega, s);
}

}  // namespace wkbdelta
