#pragma once

// Structural retention kernel for linearly gravity-coupled sensors.
//
// At fixed interrogation time t a model supplies
//   F_tt(g) = c0 + c1 g + c2 g^2          (always quadratic in g)
//   F_gt(g) = d0 + d1 g                    (affine under the weak commutator condition)
//   F_gg                                   (g independent)
// Completing the square gives the axis pair (g_c, g_*), and the profiled
// information factors as F_eff = F_gg R(u) with u = (g - g_c)/g_* and
//   R(u) = 1 - (alpha0 + alpha1 u)^2 / (1 + u^2).

#include "qgrav/core.hpp"

namespace qgrav::kernel {

/// Band outside [0, 1] that retention_kernel clamps instead of rejecting.
inline constexpr double kClampBand = 1e-9;

struct KernelParams {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double d0 = 0.0;
  double d1 = 0.0;
  double f_gg = 0.0;
  double t = 0.0;

  /// Cauchy-Schwarz: c0 c2 - c1^2/4 >= -tol, and c0, c2, f_gg >= -tol.
  bool is_consistent(double tol = 1e-10) const noexcept;
};

/// Vertex and half-width of the quadratic timing block. Only constructible
/// with g_star > 0.
class AxisParams {
 public:
  static AxisParams make(double g_c, double g_star);

  double g_c() const noexcept { return g_c_; }
  double g_star() const noexcept { return g_star_; }

 private:
  AxisParams(double g_c, double g_star) : g_c_(g_c), g_star_(g_star) {}
  double g_c_;
  double g_star_;
};

struct NormalizedCoeffs {
  double alpha0 = 0.0;
  double alpha1 = 0.0;
  double t = 0.0;
};

AxisParams axis_from_quadratic(const KernelParams& p);

double timing_block(const KernelParams& p, double g) noexcept;

double cross_term(const KernelParams& p, double g) noexcept;

NormalizedCoeffs normalized_coeffs(const KernelParams& p, const AxisParams& a);

/// R(u). Raw values within kClampBand of [0, 1] are clamped; larger
/// excursions throw KernelOutOfRange (inconsistent coefficients).
double retention_kernel(const NormalizedCoeffs& n, double u);

double u_coordinate(double g, const AxisParams& a) noexcept;

/// FisherMatrix2 assembled from the kernel representation at a given g.
FisherMatrix2 assemble(const KernelParams& p, double g) noexcept;

}  // namespace qgrav::kernel
