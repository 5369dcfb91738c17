#include "wkbdelta/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "wkbdelta/errors.hpp"

namespace wkbdelta {

std::string_view to_string(IntegralKind kind) {
  switch (kind) {
    case IntegralKind::J1:
      return "J1";
    case IntegralKind::J2:
      return "J2";
    case IntegralKind::J3:
      return "J3";
  }
  return "?";
}

IntegralKind integral_kind_from_string(std::string_view name) {
  if (name == "J1") return IntegralKind::J1;
  if (name == "J2") return IntegralKind::J2;
  if (name == "J3") return IntegralKind::J3;
  throw DomainError("unknown integral kind '" + std::string(name) + "'");
}

namespace {

// (V(A) - V(x)) / (A^2 - x^2), a polynomial in x^2 that stays positive on [-A, A].
double reduced_gap(const PotentialSpec& spec, double amplitude, double x) {
  const int d = anharmonic_degree(spec);
  const double a2 = amplitude * amplitude;
  const double x2 = x * x;
  double gap = 0.5 * spec.mass * spec.omega * spec.omega;
  if (spec.family != Family::harmonic) {
    double sum = 0.0;
    double a_pow = 1.0;
    for (int i = 0; i < d; ++i) {
      sum += a_pow * std::pow(x2, d - 1 - i);
      a_pow *= a2;
    }
    gap += spec.coupling / (2.0 * d) * sum;
  }
  return gap;
}

double kernel(IntegralKind kind, const PotentialSpec& spec, double x) {
  switch (kind) {
    case IntegralKind::J1:
      return 1.0;
    case IntegralKind::J2:
      return potential_derivative(spec, x, 2);
    case IntegralKind::J3: {
      const double v1 = potential_derivative(spec, x, 1);
      const double v2 = potential_derivative(spec, x, 2);
      const double v3 = potential_derivative(spec, x, 3);
      return 7.0 * v2 * v2 - 5.0 * v1 * v3;
    }
  }
  return 0.0;
}

void check_tolerance(double tol) {
  if (!(tol >= 1e-14 && tol <= 1e-6)) throw DomainError("quadrature tol must lie in [1e-14, 1e-6]");
}

template <unsigned Points>
double integrate_rule(const auto& f, double tol, double& error, double& l1) {
  return boost::math::quadrature::gauss_kronrod<double, Points>::integrate(
      f, 0.0, std::numbers::pi / 2, kQuadratureMaxDepth, tol, &error, &l1);
}

}  // namespace

double substituted_integrand(IntegralKind kind, const PotentialSpec& spec, double amplitude,
                             double theta) {
  const double x = amplitude * std::sin(theta);
  const double root_gap = std::sqrt(reduced_gap(spec, amplitude, x));
  if (kind == IntegralKind::J1) {
    const double c = std::cos(theta);
    return 2.0 * amplitude * amplitude * c * c * root_gap;
  }
  return 2.0 * kernel(kind, spec, x) / root_gap;
}

Estimate integral_exact(IntegralKind kind, const PotentialSpec& spec, double energy, double tol,
                        QuadratureRule rule) {
  check_tolerance(tol);
  const double amplitude = turning_amplitude(spec, energy).amplitude;
  auto f = [&](double theta) { return substituted_integrand(kind, spec, amplitude, theta); };
  double error = 0.0;
  double l1 = 0.0;
  const double value = rule == QuadratureRule::kronrod31 ? integrate_rule<31>(f, tol, error, l1)
                                                         : integrate_rule<15>(f, tol, error, l1);
  if (!std::isfinite(value) || error > tol * l1) {
    throw AccuracyError("quadrature for " + std::string(to_string(kind)) +
                            " did not reach the requested tolerance",
                        value, error);
  }
  return {value, error};
}

Estimate action_derivative(const PotentialSpec& spec, double energy, double tol) {
  check_tolerance(tol);
  const double amplitude = turning_amplitude(spec, energy).amplitude;
  auto f = [&](double theta) {
    return 1.0 / std::sqrt(reduced_gap(spec, amplitude, amplitude * std::sin(theta)));
  };
  double error = 0.0;
  double l1 = 0.0;
  const double value = integrate_rule<31>(f, tol, error, l1);
  if (!std::isfinite(value) || error > tol * l1)
    throw AccuracyError("quadrature for dJ1/dE did not reach the requested tolerance", value, error);
  return {value, error};
}

Estimate integral_exact_derivatives(IntegralKind kind, const PotentialSpec& spec, double energy,
                                    int order, double tol, DerivativeOptions options) {
  if (order != 1 && order != 3) throw DomainError("derivative order must be 1 or 3");
  if (!(energy > 0.0)) throw DomainError("energy must be positive");
  const int levels = std::max(1, options.richardson_levels);
  const double rel = options.relative_step > 0.0 ? options.relative_step : (order == 1 ? 1e-3 : 5e-2);
  if (!(rel < 0.5)) throw DomainError("relative step must keep E - 2h positive");

  auto j = [&](double e) { return integral_exact(kind, spec, e, tol); };

  double worst_integral_error = 0.0;
  auto stencil = [&](double h) {
    if (!(energy + h > energy)) throw AccuracyError("finite-difference step underflow", 0.0, INFINITY);
    const Estimate fp2 = j(energy + 2 * h), fp1 = j(energy + h);
    const Estimate fm1 = j(energy - h), fm2 = j(energy - 2 * h);
    worst_integral_error = std::max({worst_integral_error, fp2.error, fp1.error, fm1.error, fm2.error});
    if (order == 1) return (-fp2.value + 8 * fp1.value - 8 * fm1.value + fm2.value) / (12 * h);
    return (fp2.value - 2 * fp1.value + 2 * fm1.value - fm2.value) / (2 * h * h * h);
  };

  // Leading truncation orders: h^4 for the first-derivative stencil, h^2 for the third.
  const int p0 = order == 1 ? 4 : 2;
  std::vector<std::vector<double>> table(static_cast<std::size_t>(levels));
  double h = rel * energy;
  for (int i = 0; i < levels; ++i, h *= 0.5) {
    auto& row = table[static_cast<std::size_t>(i)];
    row.push_back(stencil(h));
    for (int k = 1; k <= i; ++k) {
      const double factor = std::pow(2.0, p0 + 2 * (k - 1)) - 1.0;
      const double prev = table[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k - 1)];
      row.push_back(row.back() + (row.back() - prev) / factor);
    }
  }
  const auto& last = table.back();
  const double value = last.back();
  double err = levels > 1 ? std::abs(last.back() - last[last.size() - 2]) : std::abs(value);
  const double h_min = 2.0 * h;
  err += (order == 1 ? 1.5 / h_min : 3.0 / (h_min * h_min * h_min)) * worst_integral_error;
  return {value, err};
}

}  // namespace wkbdelta
