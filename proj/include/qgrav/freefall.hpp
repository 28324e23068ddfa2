#pragma once

// Centered minimum-uncertainty Gaussian wavepacket under H = p^2/2m + m g z.
// Natural units (hbar = m = 1, sigma as length unit) by default.

#include "qgrav/core.hpp"
#include "qgrav/kernel.hpp"

namespace qgrav::freefall {

/// psi0(z) ~ exp(-z^2 / (2 sigma^2)); Var(z) = sigma^2/2, Var(p) = hbar^2/(2 sigma^2).
class GaussianProbe {
 public:
  explicit GaussianProbe(double sigma, double mass = 1.0, double hbar = 1.0);

  double sigma() const noexcept { return sigma_; }
  double mass() const noexcept { return mass_; }
  double hbar() const noexcept { return hbar_; }

  double var_z() const noexcept { return 0.5 * sigma_ * sigma_; }
  double var_p() const noexcept { return 0.5 * hbar_ * hbar_ / (sigma_ * sigma_); }
  double cov_zp() const noexcept { return 0.0; }

 private:
  double sigma_;
  double mass_;
  double hbar_;
};

FisherMatrix2 qfim(const GaussianProbe& probe, double g, double t);

/// g_* = hbar^2 / (2 m^2 sigma^3).
double lorentz_scale(const GaussianProbe& probe) noexcept;

/// t^4/(2 sigma^2) + (2 m^2 sigma^2 t^2 / hbar^2) / (1 + (g/g_*)^2).
double effective_info(const GaussianProbe& probe, double g, double t);

kernel::KernelParams kernel_params(const GaussianProbe& probe, double t);

}  // namespace qgrav::freefall
