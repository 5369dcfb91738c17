#pragma once

#include <Eigen/Dense>
#include <vector>

#include "wkbdelta/model.hpp"

namespace wkbdelta {

enum class Parity { even, odd, both };

struct BasisConfig {
  int size = 64;                 // basis functions |0> .. |size-1>
  double scale_frequency = 0.0;  // Omega of the basis oscillator; 0 selects default_scale_frequency
  Parity parity = Parity::both;  // even/odd keep only the k of that parity
};

// Omega minimising the summed diagonal <k|H|k>, k = 0..n_max.
double default_scale_frequency(const PotentialSpec& spec, int n_max);

// p^2/(2m) + V(x) in the harmonic-oscillator basis at frequency Omega. Powers of x are
// multiplied out on a slightly larger basis so the returned block is exact, then mirrored
// so the matrix is symmetric bit for bit.
Eigen::MatrixXd hamiltonian_matrix(const PotentialSpec& spec, const BasisConfig& basis);

struct OracleOptions {
  int max_size = 4096;
  double scale_frequency = 0.0;
  bool parity_blocks = true;  // diagonalise even and odd blocks separately
};

struct OracleSpectrum {
  std::vector<double> energies;  // levels 0..n_max
  int basis_size_used = 0;
  std::vector<double> convergence_estimate;  // relative change under the last doubling
  double scale_frequency = 0.0;
};

// Doubles the basis from max(4 n_max, 64) until every level changes by less than tol
// (relative). Throws ConvergenceError when the cap is reached.
OracleSpectrum exact_spectrum(const PotentialSpec& spec, int n_max, double tol = 1e-10,
                              const OracleOptions& options = {});

}  // namespace wkbdelta
