#include "wkbdelta/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>
#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>

#include "wkbdelta/errors.hpp"

namespace wkbdelta {

namespace {

using Sparse = Eigen::SparseMatrix<double>;

// (a + a^dagger)^2 on |0> .. |n-1>.
Sparse ladder_square(int n) {
  std::vector<Eigen::Triplet<double>> t;
  for (int k = 0; k < n; ++k) {
    t.emplace_back(k, k, 2.0 * k + 1.0);
    if (k + 2 < n) {
      const double v = std::sqrt((k + 1.0) * (k + 2.0));
      t.emplace_back(k, k + 2, v);
      t.emplace_back(k + 2, k, v);
    }
  }
  Sparse m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

double scale_or_default(const PotentialSpec& spec, double requested, int n_max) {
  if (requested > 0.0) return requested;
  if (requested < 0.0 || !std::isfinite(requested)) throw DomainError("scale_frequency must be positive");
  return default_scale_frequency(spec, n_max);
}

}  // namespace

double default_scale_frequency(const PotentialSpec& spec, int n_max) {
  spec.validate();
  if (spec.family == Family::harmonic) return spec.omega;
  const int d = anharmonic_degree(spec);
  const double mw2 = spec.mass * spec.omega * spec.omega;
  auto trace = [&](double log_omega) {
    const double w = std::exp(log_omega);
    const double l = spec.hbar / (2.0 * spec.mass * w);
    double sum = 0.0;
    for (int k = 0; k <= n_max; ++k) {
      const double q = 2.0 * k + 1.0;
      const double x2 = l * q;
      const double x4 = 3.0 * l * l * (2.0 * k * k + 2.0 * k + 1.0);
      const double x6 = l * l * l * (20.0 * k * k * k + 30.0 * k * k + 40.0 * k + 15.0);
      const double anharmonic = d == 2 ? x4 / 4.0 : x6 / 6.0;
      sum += spec.hbar * w * q / 4.0 + 0.5 * mw2 * x2 + spec.coupling * anharmonic;
    }
    return sum;
  };
  // The pure anharmonic optimum of the ground state brackets the search.
  const double w_anh = std::pow(spec.coupling * std::pow(spec.hbar, d - 1) / std::pow(spec.mass, d),
                                1.0 / (d + 1));
  const double centre = std::log(std::max(spec.omega, w_anh));
  const auto best = boost::math::tools::brent_find_minima(trace, centre - 12.0, centre + 12.0, 40);
  return std::exp(best.first);
}

Eigen::MatrixXd hamiltonian_matrix(const PotentialSpec& spec, const BasisConfig& basis) {
  spec.validate();
  if (basis.size < 4) throw DomainError("basis size must be at least 4");
  const double w = scale_or_default(spec, basis.scale_frequency, basis.size / 4);
  const int d = anharmonic_degree(spec);
  const int n = basis.size;
  const int big = n + 2 * d + 2;
  const double l = spec.hbar / (2.0 * spec.mass * w);

  const Sparse s2 = ladder_square(big);
  Sparse power = s2;
  for (int i = 1; i < d; ++i) power = Sparse(power * s2);

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  const Eigen::MatrixXd x2 = Eigen::MatrixXd(s2).topLeftCorner(n, n);
  const double mw2 = spec.mass * spec.omega * spec.omega;
  // p^2/(2m) = (hbar w / 4) [(2k+1) - (a^2 + a^dagger^2)] = (hbar w / 4) [2 (2k+1) - (a + a^dagger)^2]
  h += (0.5 * mw2 * l - spec.hbar * w / 4.0) * x2;
  for (int k = 0; k < n; ++k) h(k, k) += spec.hbar * w * (2.0 * k + 1.0) / 2.0;
  if (spec.family != Family::harmonic) {
    const Eigen::MatrixXd xp = Eigen::MatrixXd(power).topLeftCorner(n, n);
    h += spec.coupling / (2.0 * d) * std::pow(l, d) * xp;
  }
  h.triangularView<Eigen::StrictlyLower>() = h.transpose().triangularView<Eigen::StrictlyLower>();

  if (basis.parity == Parity::both) return h;
  const int first = basis.parity == Parity::even ? 0 : 1;
  const int m = (n - first + 1) / 2;
  Eigen::MatrixXd block(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) block(i, j) = h(first + 2 * i, first + 2 * j);
  return block;
}

namespace {

std::vector<double> eigenvalues(const PotentialSpec& spec, int size, double w, bool blocks) {
  std::vector<double> out;
  auto solve = [&](Parity p) {
    const Eigen::MatrixXd h = hamiltonian_matrix(spec, {size, w, p});
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("symmetric eigensolver failed");
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()(i));
  };
  if (blocks) {
    solve(Parity::even);
    solve(Parity::odd);
  } else {
    solve(Parity::both);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

OracleSpectrum exact_spectrum(const PotentialSpec& spec, int n_max, double tol, const OracleOptions& options) {
  spec.validate();
  if (n_max < 0) throw DomainError("n_max must be nonnegative");
  if (!(tol >= 1e-12 && tol <= 1e-4)) throw DomainError("oracle tol must lie in [1e-12, 1e-4]");
  const double w = scale_or_default(spec, options.scale_frequency, n_max);
  const auto levels = static_cast<std::size_t>(n_max) + 1;

  int size = std::max(4 * n_max, 64);
  if (size > options.max_size) throw ConvergenceError("initial basis exceeds the size cap", 0);
  std::vector<double> previous = eigenvalues(spec, size, w, options.parity_blocks);
  std::size_t converged = 0;
  while (2 * size <= options.max_size) {
    size *= 2;
    std::vector<double> current = eigenvalues(spec, size, w, options.parity_blocks);
    OracleSpectrum out;
    out.scale_frequency = w;
    out.basis_size_used = size;
    converged = 0;
    bool prefix = true;
    for (std::size_t k = 0; k < levels; ++k) {
      // Ritz values can only move down as the basis grows; the eigensolver itself is only
      // backward stable, to a multiple of eps times the spectral radius.
      const double slack = 256 * std::numeric_limits<double>::epsilon() *
                           std::max(std::abs(current.back()), std::abs(current.front()));
      if (current[k] > previous[k] + slack)
        throw NumericalError("variational monotonicity violated at level " + std::to_string(k));
      const double change = std::abs(current[k] - previous[k]) / std::abs(current[k]);
      out.energies.push_back(current[k]);
      out.convergence_estimate.push_back(change);
      if (change < tol && prefix) ++converged;
      else prefix = false;
    }
    if (converged == levels) return out;
    previous = std::move(current);
  }
  throw ConvergenceError("basis cap " + std::to_string(options.max_size) + " reached with " +
                             std::to_string(converged) + " of " + std::to_string(levels) + " levels converged",
                         converged);
}

}  // namespace wkbdelta
