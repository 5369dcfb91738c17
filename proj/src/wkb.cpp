#include "wkbdelta/wkb.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "wkbdelta/errors.hpp"
#include "wkbdelta/quadrature.hpp"

namespace wkbdelta {

std::string_view to_string(HbarOrder order) {
  switch (order) {
    case HbarOrder::h0:
      return "h0";
    case HbarOrder::h2:
      return "h2";
    case HbarOrder::h4:
      return "h4";
  }
  return "?";
}

HbarOrder hbar_order_from_string(std::string_view name) {
  if (name == "h0") return HbarOrder::h0;
  if (name == "h2") return HbarOrder::h2;
  if (name == "h4") return HbarOrder::h4;
  throw DomainError("unknown hbar order '" + std::string(name) + "'");
}

std::string_view to_string(IntegralSource source) {
  return source == IntegralSource::series ? "series" : "quadrature";
}

IntegralSource integral_source_from_string(std::string_view name) {
  if (name == "series") return IntegralSource::series;
  if (name == "quadrature") return IntegralSource::quadrature;
  throw DomainError("unknown integral source '" + std::string(name) + "'");
}

namespace {

using Jet = std::vector<long double>;  // Taylor coefficients, lowest first

Jet multiply(const Jet& a, const Jet& b, std::size_t order) {
  Jet out(order + 1, 0.0L);
  for (std::size_t i = 0; i < a.size() && i <= order; ++i)
    for (std::size_t j = 0; j < b.size() && i + j <= order; ++j) out[i + j] += a[i] * b[j];
  return out;
}

long double falling(long double p, int k) {
  long double r = 1.0L;
  for (int i = 0; i < k; ++i) r *= p - i;
  return r;
}

long double factorial(int k) {
  long double r = 1.0L;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

// Jet of zeta(E0 + eps) - zeta0 by reverting the jet of E(zeta0 + eta).
Jet zeta_jet(const PotentialSpec& spec, long double zeta0, int order) {
  const int d = anharmonic_degree(spec);
  const long double mw2 = static_cast<long double>(spec.mass) * spec.omega * spec.omega;
  const long double kappa = std::pow(mw2, static_cast<long double>(d) / (d - 1)) *
                            std::pow(static_cast<long double>(spec.coupling), -1.0L / (d - 1));
  const long double p1 = -static_cast<long double>(d) / (d - 1);
  const long double p2 = -1.0L / (d - 1);
  Jet e(static_cast<std::size_t>(order + 1), 0.0L);
  for (int j = 1; j <= order; ++j) {
    e[static_cast<std::size_t>(j)] =
        kappa * (falling(p1, j) * std::pow(zeta0, p1 - j) / (2 * d) + falling(p2, j) * std::pow(zeta0, p2 - j) / 2) /
        factorial(j);
  }
  const auto n = static_cast<std::size_t>(order);
  Jet eta(n + 1, 0.0L);
  for (int it = 0; it < order; ++it) {
    Jet rhs(n + 1, 0.0L);
    rhs[1] = 1.0L;
    Jet power = eta;
    for (std::size_t j = 2; j <= n; ++j) {
      power = multiply(power, eta, n);
      for (std::size_t k = 0; k <= n; ++k) rhs[k] -= e[j] * power[k];
    }
    for (std::size_t k = 0; k <= n; ++k) eta[k] = rhs[k] / e[1];
  }
  return eta;
}

// Exponents of J = K A^pA c^pc at zeta = 0.
struct PowerLaw {
  long double amplitude_power;
  long double coupling_power;
};

PowerLaw power_law(const RadicalSeries& s, int d) {
  const long double a = s.mass_power.get_d();
  return {a * (2 * d - 2), a + s.coupling_power.get_d()};
}

std::vector<long double> derivatives_ld(IntegralKind kind, const PotentialSpec& spec, long double energy,
                                        int order, int delta_order, PmsMode mode, double* gate) {
  std::vector<long double> out(static_cast<std::size_t>(order + 1), 0.0L);
  if (spec.family == Family::harmonic) {
    switch (kind) {
      case IntegralKind::J1:
        out[0] = harmonic_reference::action(spec, static_cast<double>(energy));
        if (order >= 1) out[1] = std::numbers::pi_v<long double> / (spec.omega * std::sqrt(2.0L * spec.mass));
        break;
      case IntegralKind::J2:
        out[0] = harmonic_reference::j2(spec);
        break;
      case IntegralKind::J3:
        out[0] = harmonic_reference::j3(spec);
        break;
    }
    return out;
  }
  const int d = anharmonic_degree(spec);
  const RadicalSeries& base = standard_series(spec.family, kind, delta_order, mode);
  if (spec.omega == 0.0) {
    // Pure anharmonic: J = F(0) c^pc (2d E / c)^(pA / 2d).
    const ZeroExpansion z = expand_at_zero(base, 0);
    const PowerLaw law = power_law(base, d);
    const long double gamma = law.amplitude_power / (2 * d);
    const long double c = spec.coupling;
    const long double k = z.leading * std::pow(c, law.coupling_power) * std::pow(2.0L * d / c, gamma);
    for (int i = 0; i <= order; ++i)
      out[static_cast<std::size_t>(i)] = k * falling(gamma, i) * std::pow(energy, gamma - i);
    if (gate) *gate = std::max(*gate, max_abs_delta(base, 0.0));
    return out;
  }
  const long double zeta0 = series_variable(spec, static_cast<double>(energy));
  if (gate) *gate = std::max(*gate, max_abs_delta(base, static_cast<double>(zeta0)));
  const auto n = static_cast<std::size_t>(order);
  Jet j(n + 1, 0.0L);
  for (int i = 0; i <= order; ++i) {
    const RadicalSeries& s = standard_series(spec.family, kind, delta_order, mode, i);
    j[static_cast<std::size_t>(i)] = evaluate_series_ld(s, spec, zeta0) / factorial(i);
  }
  out[0] = j[0];
  if (order == 0) return out;
  const Jet eta = zeta_jet(spec, zeta0, order);
  Jet composed(n + 1, 0.0L);
  Jet power(n + 1, 0.0L);
  power[0] = 1.0L;
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t k = 0; k <= n; ++k) composed[k] += j[i] * power[k];
    power = multiply(power, eta, n);
  }
  for (int k = 0; k <= order; ++k)
    out[static_cast<std::size_t>(k)] = composed[static_cast<std::size_t>(k)] * factorial(k);
  return out;
}

long double hbar2_factor(const PotentialSpec& spec) {
  return static_cast<long double>(spec.hbar) * spec.hbar / (48.0L * spec.mass);
}

long double hbar4_factor(const PotentialSpec& spec) {
  const long double h2 = static_cast<long double>(spec.hbar) * spec.hbar;
  return h2 * h2 / (11520.0L * spec.mass * spec.mass);
}

}  // namespace

std::vector<double> series_energy_derivatives(IntegralKind kind, const PotentialSpec& spec,
                                              double energy, int order, int delta_order,
                                              PmsMode mode) {
  spec.validate();
  if (!(energy > 0.0)) throw DomainError("energy must be positive");
  if (order < 0 || order > 4) throw DomainError("energy derivative order must lie in [0, 4]");
  const auto ld = derivatives_ld(kind, spec, energy, order, delta_order, mode, nullptr);
  return {ld.begin(), ld.end()};
}

LambdaValue lambda_with_derivative(const PotentialSpec& spec, double energy,
                                   const QuantizationConfig& config) {
  spec.validate();
  if (!(energy > 0.0) || !std::isfinite(energy)) throw DomainError("energy must be positive");
  if (config.delta_order < 1) throw DomainError("delta_order must be at least 1");
  const bool h2 = config.hbar_order != HbarOrder::h0;
  const bool h4 = config.hbar_order == HbarOrder::h4;
  LambdaValue out;

  if (config.integral_source == IntegralSource::quadrature) {
    const double tol = config.quadrature_tol;
    const Estimate j1 = integral_exact(IntegralKind::J1, spec, energy, tol);
    const Estimate dj1 = action_derivative(spec, energy, tol);
    out.value = j1.value;
    out.derivative = dj1.value;
    out.error = j1.error;
    if (h2) {
      const Estimate d = integral_exact_derivatives(IntegralKind::J2, spec, energy, 1, tol);
      out.value -= static_cast<double>(hbar2_factor(spec)) * d.value;
      out.error += static_cast<double>(hbar2_factor(spec)) * d.error;
    }
    if (h4) {
      const Estimate d = integral_exact_derivatives(IntegralKind::J3, spec, energy, 3, tol);
      out.value += static_cast<double>(hbar4_factor(spec)) * d.value;
      out.error += static_cast<double>(hbar4_factor(spec)) * d.error;
    }
    return out;
  }

  double gate = spec.family == Family::harmonic ? NAN : 0.0;
  double* g = spec.family == Family::harmonic ? nullptr : &gate;
  const auto j1 = derivatives_ld(IntegralKind::J1, spec, energy, 1, config.delta_order, config.pms_mode, g);
  long double value = j1[0];
  long double deriv = j1[1];
  if (h2) {
    const auto j2 = derivatives_ld(IntegralKind::J2, spec, energy, 2, config.delta_order, config.pms_mode, g);
    value -= hbar2_factor(spec) * j2[1];
    deriv -= hbar2_factor(spec) * j2[2];
  }
  if (h4) {
    const auto j3 = derivatives_ld(IntegralKind::J3, spec, energy, 4, config.delta_order, config.pms_mode, g);
    value += hbar4_factor(spec) * j3[3];
    deriv += hbar4_factor(spec) * j3[4];
  }
  out.value = static_cast<double>(value);
  out.derivative = static_cast<double>(deriv);
  out.convergence_gate = gate;
  return out;
}

double lambda_of_energy(const PotentialSpec& spec, double energy, const QuantizationConfig& config) {
  return lambda_with_derivative(spec, energy, config).value;
}

double quantization_target(const PotentialSpec& spec, double nu) {
  return std::numbers::pi * spec.hbar * nu / std::sqrt(2.0 * spec.mass);
}

namespace {

// Energy at which the leading-order action of the harmonic or the pure anharmonic part alone
// reaches the target; the larger one is a good starting guess.
double seed_energy(const PotentialSpec& spec, double nu, double target) {
  double seed = 0.0;
  if (spec.omega > 0.0) seed = spec.hbar * spec.omega * nu;
  if (spec.family != Family::harmonic) {
    const int d = anharmonic_degree(spec);
    const double b = boost::math::beta(1.0 / (2 * d), 1.5) / d;
    const double k = std::pow(2.0 * d / spec.coupling, 1.0 / (2 * d)) * b;
    seed = std::max(seed, std::pow(target / k, 2.0 * d / (d + 1)));
  }
  return seed;
}

std::string method_tag(const QuantizationConfig& c) {
  return "wkb-" + std::string(to_string(c.integral_source)) + "-" + std::string(to_string(c.hbar_order));
}

}  // namespace

LevelResult solve_level(const PotentialSpec& spec, long n, const QuantizationConfig& config) {
  spec.validate();
  if (n < 0) throw DomainError("quantum number must be nonnegative");
  const double nu = static_cast<double>(n) + 0.5;
  const double target = quantization_target(spec, nu);
  LevelResult result;
  result.n = n;
  result.method = method_tag(config);

  auto f = [&](double e) {
    LambdaValue v = lambda_with_derivative(spec, e, config);
    v.value -= target;
    return v;
  };

  const double seed = seed_energy(spec, nu, target);
  double lo = 0.5 * seed;
  double hi = 2.0 * seed;
  int expansions = 0;
  while (f(lo).value > 0.0) {
    lo *= 0.5;
    if (++expansions > 200) throw SolverError("could not bracket level " + std::to_string(n) + " from below");
  }
  while (f(hi).value < 0.0) {
    hi *= 2.0;
    if (++expansions > 200) throw SolverError("could not bracket level " + std::to_string(n) + " from above");
  }

  double e = std::clamp(seed, lo, hi);
  LambdaValue fe = f(e);
  int it = 0;
  for (; it < 200; ++it) {
    if (fe.value == 0.0) break;
    if (fe.value < 0.0) lo = e;
    else hi = e;
    double next = e - fe.value / fe.derivative;
    if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - e);
    e = next;
    fe = f(e);
    if (step <= 1e-14 * e || hi - lo <= 1e-15 * e) break;
  }
  result.energy = e;
  result.iterations = it + 1;
  result.residual = std::abs(fe.value);
  result.convergence_gate = fe.convergence_gate;
  const double allowed = std::max(1e-11 * target, 4.0 * fe.error);
  if (!(result.residual <= allowed)) {
    throw SolverError("level " + std::to_string(n) + " residual " + std::to_string(result.residual) +
                      " exceeds " + std::to_string(allowed));
  }
  return result;
}

namespace {

using RationalSeries = RationalPolynomial;

// a(s) with a^3 phi(s / a^2) = 1 to O(s^order); phi(0) = 1.
RationalSeries solve_amplitude_series(const RationalSeries& phi, std::size_t order) {
  const RationalSeries s{Rational(0), Rational(1)};
  RationalSeries a(Rational(1));
  for (std::size_t k = 1; k <= order; ++k) {
    const RationalSeries x = (s * series_inverse((a * a).truncated(order), order)).truncated(order);
    RationalSeries composed;
    RationalSeries xp(Rational(1));
    for (std::size_t j = 0; j <= order; ++j) {
      composed += xp * phi.coeff(j);
      xp = (xp * x).truncated(order);
    }
    const RationalSeries residual = (a * a * a * composed).truncated(order) - RationalSeries(Rational(1));
    a += RationalSeries::monomial(-residual.coeff(k) / 3, k);
  }
  return a;
}

struct QuarticUnits {
  double e1;
  double e2;
  Rational e3;
  double e4_quantum;
  double e4_anharmonic;
};

QuarticUnits quartic_unit_coefficients(int delta_order, PmsMode mode) {
  static std::mutex mutex;
  static std::map<std::tuple<int, PmsMode>, QuarticUnits> cache;
  const auto key = std::make_tuple(delta_order, mode);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const ZeroExpansion j1 = expand_at_zero(standard_series(Family::quartic, IntegralKind::J1, delta_order, mode), 3);
  const ZeroExpansion j2 = expand_at_zero(standard_series(Family::quartic, IntegralKind::J2, delta_order, mode), 0);
  const long double f0 = j1.leading;
  const long double a0 = std::cbrt(std::numbers::pi_v<long double> / (std::sqrt(2.0L) * f0));
  const long double a0sq = a0 * a0;

  // E / (A0^4 nu^(4/3) / 4) = a^4 + 2 sigma a^2, sigma = s / (A0^2 nu^(2/3)).
  const RationalSeries a = solve_amplitude_series(j1.normalized, 3);
  const RationalSeries a2 = (a * a).truncated(3);
  const RationalSeries g =
      ((a2 * a2).truncated(3) + RationalSeries{Rational(0), Rational(2)} * a2).truncated(3);

  QuarticUnits u;
  u.e1 = static_cast<double>(a0sq * a0sq / 4);
  u.e2 = static_cast<double>(a0sq * to_long_double(g.coeff(1)) / 4);
  u.e3 = g.coeff(2) / 4;
  u.e4_anharmonic = static_cast<double>(to_long_double(g.coeff(3)) / (4 * a0sq));
  u.e4_quantum = static_cast<double>(j2.leading / (144.0L * f0 * a0sq));
  std::lock_guard lock(mutex);
  return cache.try_emplace(key, u).first->second;
}

}  // namespace

ClosedFormQuartic quartic_closed_form(const PotentialSpec& spec, int delta_order, PmsMode mode) {
  spec.validate();
  if (spec.family != Family::quartic) throw DomainError("quartic_closed_form needs the quartic family");
  const QuarticUnits u = quartic_unit_coefficients(delta_order, mode);
  const AnharmonicScales sc = anharmonic_scales(spec);
  const double w2 = sc.reduced_omega_squared;
  ClosedFormQuartic c;
  c.e1_unit = u.e1;
  c.e2_unit = u.e2;
  c.e3_unit = u.e3;
  c.e4_quantum_unit = u.e4_quantum;
  c.e4_anharmonic_unit = u.e4_anharmonic;
  c.e1 = sc.energy * u.e1;
  c.e2 = sc.energy * w2 * u.e2;
  c.e3 = sc.energy * w2 * w2 * u.e3.get_d();
  c.e4_quantum = sc.energy * u.e4_quantum;
  c.e4_anharmonic = sc.energy * w2 * w2 * w2 * u.e4_anharmonic;
  return c;
}

double quartic_energy_closed_form(const ClosedFormQuartic& coeffs, long n) {
  if (n < 0) throw DomainError("quantum number must be nonnegative");
  return quartic_energy_at(coeffs, static_cast<double>(n) + 0.5);
}

ClosedFormSextic sextic_closed_form(const PotentialSpec& spec, int delta_order, PmsMode mode) {
  spec.validate();
  if (spec.family != Family::sextic) throw DomainError("sextic_closed_form needs the sextic family");
  const ZeroExpansion j1 = expand_at_zero(standard_series(Family::sextic, IntegralKind::J1, delta_order, mode), 2);
  const AnharmonicScales sc = anharmonic_scales(spec);
  const long double w = sc.reduced_omega_squared;
  const long double f0 = j1.leading;
  const long double f1 = f0 * to_long_double(j1.normalized.coeff(1));
  const long double f2 = f0 * to_long_double(j1.normalized.coeff(2));
  // nu = a x + b + c / x with x = E^(2/3), in units hbar = m = rho = 1.
  const long double k = std::sqrt(2.0L) / std::numbers::pi_v<long double>;
  const long double six23 = std::cbrt(36.0L);
  const long double a = k * f0 * six23;
  const long double b = k * (f1 - 2 * f0) * w;
  const long double c = k * (f0 + f2) * w * w / six23;
  const long double alpha1 = 1 / (2 * c);
  const long double alpha2 = -b / (2 * c);
  const long double gamma = a / c;
  const long double s1 = std::pow(static_cast<long double>(sc.energy), -2.0L / 3);
  const long double s2 = s1 * s1;
  ClosedFormSextic out;
  out.alpha1 = static_cast<double>(alpha1 * s1);
  out.alpha2 = static_cast<double>(alpha2 * s1);
  out.beta1 = static_cast<double>(alpha1 * alpha1 * s2);
  out.beta2 = static_cast<double>(2 * alpha1 * alpha2 * s2);
  out.beta3 = static_cast<double>((alpha2 * alpha2 - gamma) * s2);
  return out;
}

bool has_square_structure(const ClosedFormSextic& c) {
  const double eps = 1e-12;
  return std::abs(c.alpha1 * c.alpha1 - c.beta1) <= eps * std::abs(c.beta1) &&
         std::abs(2 * c.alpha1 * c.alpha2 - c.beta2) <= eps * std::abs(c.beta2);
}

double sextic_energy_closed_form(const ClosedFormSextic& c, long n) {
  if (n < 0) throw DomainError("quantum number must be nonnegative");
  const double nu = static_cast<double>(n) + 0.5;
  const double disc = (c.beta1 * nu + c.beta2) * nu + c.beta3;
  if (disc < 0.0) throw FormulaRangeError("negative discriminant at level " + std::to_string(n), n);
  const double lead = c.alpha1 * nu + c.alpha2;
  const double root = std::sqrt(disc);
  const double base = has_square_structure(c) ? (c.alpha2 * c.alpha2 - c.beta3) / (lead + root) : lead - root;
  if (!(base > 0.0) || !(lead + root > 0.0))
    throw FormulaRangeError("nonpositive base at level " + std::to_string(n), n);
  return std::pow(base, -1.5);
}

}  // namespace wkbdelta
