#pragma once

// Three-pulse pi/2 - pi - pi/2 light-pulse interferometer: fringe, the
// internal-readout classical Fisher matrix (mid-fringe, rank one) and the
// full-state QFIM with its motional timing channel.

#include "qgrav/core.hpp"
#include "qgrav/kernel.hpp"

namespace qgrav::kc {

struct KCConfig {
  double k0 = 1.0;          // effective wave number
  double T = 1.0;           // pulse separation
  double contrast = 1.0;    // C in [0, 1]
  double g = 0.0;
  double sigma_v = 0.0;     // longitudinal velocity spread, sqrt(Var p)/m
  long n_atoms = 1;
  double phi_ctrl = 0.0;    // phi_1 - 2 phi_2 + phi_3

  /// Throws InvalidArgument when an invariant fails.
  void validate() const;
};

/// -k0 g T^2 - phi_ctrl.
double delta_phi(const KCConfig& cfg) noexcept;

/// (1/2)[1 - C cos(delta_phi)].
double fringe_probability(const KCConfig& cfg);

/// Mid-fringe population-readout Fisher matrix over (g, T); exactly rank one.
FisherMatrix2 internal_fisher(const KCConfig& cfg);

/// C^2 k0^2 T^4 / (1 + 4 C^2 k0^2 g^2 T^2 dT_prior^2), written through I_prior.
double internal_effective_regularized(const KCConfig& cfg, const PriorInfo& prior);

/// Ideal-closure product-state QFIM, multiplied by n_atoms.
FisherMatrix2 fullstate_qfim(const KCConfig& cfg);

/// N k0^2 T^4 sigma_v^2 / (sigma_v^2 + g^2 T^2).
double fullstate_effective(const KCConfig& cfg);

/// sigma_v^2 / (sigma_v^2 + g^2 T^2); Indeterminate when both vanish.
double fullstate_retention(double g, double T, double sigma_v);

/// Kernel coefficients of the full-state matrix: g_c = 0, g_* = sigma_v/T, (alpha0, alpha1) = (0, 1).
kernel::KernelParams fullstate_kernel_params(const KCConfig& cfg);

/// Kernel coefficients of the prior-regularized internal readout:
/// g_c = 0, g_* = 1/(2 C k0 T dT_prior), (alpha0, alpha1) = (0, 1).
kernel::KernelParams internal_regularized_kernel_params(const KCConfig& cfg, const PriorInfo& prior);

}  // namespace qgrav::kc
