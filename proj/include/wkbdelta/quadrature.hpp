#pragma once

#include <string_view>

#include "wkbdelta/model.hpp"

namespace wkbdelta {

// J1 = int sqrt(E - V) dx, J2 = int V'' / sqrt(E - V) dx,
// J3 = int (7 V''^2 - 5 V' V''') / sqrt(E - V) dx, all between the turning points.
enum class IntegralKind { J1, J2, J3 };

std::string_view to_string(IntegralKind kind);
IntegralKind integral_kind_from_string(std::string_view name);

struct Estimate {
  double value = 0.0;
  double error = 0.0;  // absolute error bound
};

// Two adaptive Gauss-Kronrod rules are available so the oracle can be checked against
// itself; the default is the higher-order one.
enum class QuadratureRule { kronrod15, kronrod31 };

inline constexpr double kDefaultQuadratureTol = 1e-12;
inline constexpr unsigned kQuadratureMaxDepth = 20;

// Integrals are taken in x = A sin(theta), which makes every integrand smooth and bounded
// on the closed interval for polynomial V. tol is relative and must lie in [1e-14, 1e-6].
Estimate integral_exact(IntegralKind kind, const PotentialSpec& spec, double energy,
                        double tol = kDefaultQuadratureTol,
                        QuadratureRule rule = QuadratureRule::kronrod31);

// The theta-space integrand of `kind`, exposed so tests can probe its endpoint limits.
double substituted_integrand(IntegralKind kind, const PotentialSpec& spec, double amplitude,
                             double theta);

// dJ1/dE = (1/2) int dx / sqrt(E - V), the classical half-period.
Estimate action_derivative(const PotentialSpec& spec, double energy,
                           double tol = kDefaultQuadratureTol);

struct DerivativeOptions {
  double relative_step = 0.0;  // 0 selects 1e-3 for order 1 and 5e-2 for order 3
  int richardson_levels = 4;
};

// d^k J / dE^k for k in {1, 3}: five-point central stencils on integral_exact, refined by
// Richardson extrapolation over halved steps.
Estimate integral_exact_derivatives(IntegralKind kind, const PotentialSpec& spec, double energy,
                                    int order, double tol = kDefaultQuadratureTol,
                                    DerivativeOptions options = {});

}  // namespace wkbdelta
