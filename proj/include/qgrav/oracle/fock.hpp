#pragma once

// Truncated Fock-space model of a cavity mode coupled to a mechanical mode,
// in units of the mechanical frequency (hbar = omega_m = 1):
//   H(g) = -delta n + b^dag b - kbar n x + A g x,   x = (b + b^dag)/sqrt(2).
// The optical number n is conserved, so H is block diagonal with one D x D
// block per photon number. The initial state is coherent (x) coherent with
// mean photon number mu and mechanical quadrature means (beta_r, beta_i).

#include <vector>

#include <Eigen/Dense>

namespace qgrav::oracle {

struct FockModel {
  double kbar = 0.0;
  double mu = 0.0;
  double beta_r = 0.0;
  double beta_i = 0.0;
  double delta = 0.0;
  double a_coef = 1.0;
  int fock_dim = 40;    // mechanical levels per block
  int photon_max = 20;  // highest photon block kept

  int blocks() const noexcept { return photon_max + 1; }
  Eigen::Index dim() const noexcept { return static_cast<Eigen::Index>(blocks()) * fock_dim; }

  /// Throws InvalidArgument for bad parameters and TruncationTooSmall when
  /// the optical or mechanical tail exceeds 1e-8 for any |g| <= g_max, t.
  void validate(double g_max = 0.0) const;

  /// Photon-number weights p_n, renormalized over the kept blocks.
  std::vector<double> photon_weights() const;
  /// Mechanical coherent amplitudes in the number basis, unit norm.
  Eigen::VectorXcd mechanical_state() const;
  /// Full initial state, block-major layout [n * D + j].
  Eigen::VectorXcd initial_state() const;

  Eigen::MatrixXd position() const;  // x in the D-level number basis
  Eigen::MatrixXd block_hamiltonian(int n, double g) const;

  /// Smallest (fock_dim, photon_max) meeting the tail bounds with margin.
  static FockModel with_auto_truncation(FockModel base, double g_max);
};

/// Dense per-block evolution exp(-i H(g) t) |psi0>.
Eigen::VectorXcd propagate(const FockModel& model, double g, double t);

/// Same evolution, but on the full tensor-product space with H assembled
/// from optical and mechanical ladder operators and exponentiated as one
/// matrix. Used to check that the optical number is conserved.
Eigen::VectorXcd propagate_full_space(const FockModel& model, double g, double t);

/// Largest change of <n>, Var(n) and any block weight between psi0 and psi.
double photon_statistics_drift(const FockModel& model, const Eigen::VectorXcd& psi);

}  // namespace qgrav::oracle
