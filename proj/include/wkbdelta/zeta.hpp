#pragma once

#include "wkbdelta/model.hpp"

namespace wkbdelta {

// Z(s) = sum_n E_n^(-s).
struct ZetaEstimate {
  double s = 0.0;
  int k_numeric = 0;   // levels 0..k-1 come from the diagonalisation oracle
  double value = 0.0;
  double head = 0.0;
  double tail = 0.0;
  double tail_bound = 0.0;  // first omitted Euler-Maclaurin correction plus the tail integral error
};

// Smallest s for which the sum converges: 3/4 (quartic), 2/3 (sextic), 1 (harmonic).
double zeta_threshold(const PotentialSpec& spec);

// Head from exact_spectrum, tail from the closed-form spectrum summed by Euler-Maclaurin with
// four derivative corrections. Throws DivergenceError for s at or below the threshold and
// AccuracyError when tail_bound exceeds tol.
ZetaEstimate zeta_hybrid(const PotentialSpec& spec, double s, int k_numeric, double tol = 1e-8);

// 3^(2/3) Gamma(1/3)^5 / (8 pi^2) at hbar = m = 1, mu = 4, rescaled to the given hbar, m, mu;
// quartic family with omega = 0 only.
double quartic_zeta_one_exact(const PotentialSpec& spec);
// sum_n (hbar omega (n + 1/2))^(-s) = (2^s - 1) zeta_R(s) / (hbar omega)^s, s > 1.
double harmonic_zeta_exact(const PotentialSpec& spec, double s);

}  // namespace wkbdelta
