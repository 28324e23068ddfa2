#include "qgrav/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qgrav/errors.hpp"

namespace qgrav::kernel {

bool KernelParams::is_consistent(double tol) const noexcept {
  return c0 >= -tol && c2 >= -tol && f_gg >= -tol && c0 * c2 - 0.25 * c1 * c1 >= -tol;
}

AxisParams AxisParams::make(double g_c, double g_star) {
  if (!std::isfinite(g_c) || !(g_star > 0.0) || !std::isfinite(g_star))
    throw Error(ErrorKind::DegenerateAxis,
                "axis parameters need finite g_c and g_star > 0 (got g_star = " +
                    std::to_string(g_star) + ")");
  return AxisParams(g_c, g_star);
}

AxisParams axis_from_quadratic(const KernelParams& p) {
  if (!(p.c2 > kTolAbs))
    throw Error(ErrorKind::DegenerateTimingSector,
                "c2 = " + std::to_string(p.c2) + " (position variance vanishes)");
  const double disc = p.c0 * p.c2 - 0.25 * p.c1 * p.c1;
  const double g_star_sq = disc / (p.c2 * p.c2);
  if (!(disc > kTolAbs) || !(g_star_sq > kTolAbs))
    throw Error(ErrorKind::DegenerateAxis,
                "g_*^2 = " + std::to_string(g_star_sq) + " (degenerate timing block)");
  return AxisParams::make(-p.c1 / (2.0 * p.c2) + 0.0, std::sqrt(disc) / p.c2);
}

double timing_block(const KernelParams& p, double g) noexcept {
  return p.c0 + g * (p.c1 + g * p.c2);
}

double cross_term(const KernelParams& p, double g) noexcept { return p.d0 + p.d1 * g; }

NormalizedCoeffs normalized_coeffs(const KernelParams& p, const AxisParams& a) {
  if (!(p.f_gg > kTolAbs))
    throw Error(ErrorKind::DegenerateBaseline, "f_gg = " + std::to_string(p.f_gg));
  if (!(p.c2 > kTolAbs))
    throw Error(ErrorKind::DegenerateTimingSector, "c2 = " + std::to_string(p.c2));
  const double scale = std::sqrt(p.f_gg * p.c2);
  return {(p.d0 + p.d1 * a.g_c()) / (scale * a.g_star()), p.d1 / scale, p.t};
}

double retention_kernel(const NormalizedCoeffs& n, double u) {
  double raw;
  if (std::isinf(u)) {
    raw = 1.0 - n.alpha1 * n.alpha1;
  } else {
    const double num = n.alpha0 + n.alpha1 * u;
    raw = 1.0 - num * num / (1.0 + u * u);
  }
  if (raw < -kClampBand || raw > 1.0 + kClampBand || std::isnan(raw))
    throw Error(ErrorKind::KernelOutOfRange,
                "R = " + std::to_string(raw) + " at u = " + std::to_string(u) +
                    " (alpha0 = " + std::to_string(n.alpha0) +
                    ", alpha1 = " + std::to_string(n.alpha1) + ")");
  return std::clamp(raw, 0.0, 1.0);
}

double u_coordinate(double g, const AxisParams& a) noexcept {
  return (g - a.g_c()) / a.g_star();
}

FisherMatrix2 assemble(const KernelParams& p, double g) noexcept {
  return {p.f_gg, cross_term(p, g), timing_block(p, g), UnitSystem::Natural};
}

}  // namespace qgrav::kernel
