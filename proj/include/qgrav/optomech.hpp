#pragma once

// Closed-unitary cavity optomechanical gravimeter in units of the mechanical
// frequency. Only the gravity-time cross term and the axis pair have closed
// forms here; F_gg(t) and F_tt(g, t) come from the Fock-space oracle.

#include <span>
#include <vector>

#include "qgrav/kernel.hpp"
#include "qgrav/oracle/fock.hpp"

namespace qgrav::optomech {

/// Dimensionless mechanical time omega_m * t_phys. Kept distinct from SI
/// seconds so the two cannot be mixed up at call sites.
struct MechTime {
  double value = 0.0;
  constexpr explicit MechTime(double v) : value(v) {}
};

struct OptoConfig {
  double kbar = 0.0;    // g0 / omega_m
  double mu = 0.0;      // mean intracavity photon number
  double beta_r = 0.0;  // mechanical coherent amplitude, real part
  double beta_i = 0.0;  // imaginary part
  double delta = 0.0;   // cavity detuning / omega_m
  double a_coef = 1.0;  // A
  int fock_dim = 0;     // 0: choose automatically
  int photon_max = -1;  // -1: choose automatically

  /// Throws InvalidArgument when an invariant fails.
  void validate() const;
};

/// t - sin t.
double zeta(MechTime t) noexcept;

/// A [-16 kbar^2 mu zeta(t) (1 - cos t) beta_r
///    + 2(-sin t (kbar mu - A g - beta_r) + (1 - cos t) beta_i)].
double cross_term(const OptoConfig& cfg, double g, MechTime t);

struct AffineCoeffs {
  double d0 = 0.0;
  double d1 = 0.0;
};

/// cross_term(g) = d0 + d1 g with d1 = 2 A^2 sin t.
AffineCoeffs affine_coeffs(const OptoConfig& cfg, MechTime t);

/// g_c = (kbar mu - beta_r)/A,
/// g_* = sqrt(beta_i^2 + kbar^2 mu + mu (delta + 2 kbar beta_r)^2)/A.
/// Throws DegenerateAxis when the radicand is <= 1e-12.
kernel::AxisParams axis_params(const OptoConfig& cfg);

/// Oracle model for cfg, truncated automatically unless cfg fixes the
/// dimensions (then validated against |g| <= g_max).
oracle::FockModel fock_model(const OptoConfig& cfg, double g_max);

struct CorrelationCell {
  double u = 0.0;
  double t = 0.0;
  double g = 0.0;
  double f_gg = 0.0;          // oracle
  double f_tt = 0.0;          // oracle
  double f_gt = 0.0;          // closed form
  double f_gt_oracle = 0.0;   // oracle, for comparison
  double rho2 = 0.0;          // closed-form cross term over oracle diagonals
  double rho2_oracle = 0.0;   // all-oracle
  double degradation = 0.0;   // R^(-1/2) - 1 with R = 1 - rho2
};

struct CorrelationField {
  std::vector<double> u_grid;
  std::vector<double> t_grid;
  std::vector<CorrelationCell> cells;  // u-major: cells[i * t_grid.size() + j]
  int fock_dim = 0;
  int photon_max = 0;

  const CorrelationCell& at(std::size_t i_u, std::size_t j_t) const { return cells[i_u * t_grid.size() + j_t]; }
};

struct FieldOptions {
  int n_quadrature = 1 << 16;
};

/// rho^2(u, t) with g = g_c + u g_*. Throws TruncationTooSmall for
/// insufficient fixed truncation and KernelOutOfRange where rho^2 leaves
/// [0, 1 + 1e-9]. Cells are independent and evaluated in parallel.
CorrelationField correlation_field(const OptoConfig& cfg, std::span<const double> u_grid,
                                   std::span<const double> t_grid, const FieldOptions& opts = {});

/// Kernel coefficients harvested from the oracle at time t.
kernel::KernelParams harvested_kernel_params(const OptoConfig& cfg, MechTime t, int n_quadrature = 1 << 16);

}  // namespace qgrav::optomech
