#include "qgrav/freefall.hpp"

#include <cmath>
#include <string>

#include "qgrav/errors.hpp"

namespace qgrav::freefall {

namespace {

void require_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t))
    throw Error(ErrorKind::InvalidArgument, "t must be finite and >= 0 (got " + std::to_string(t) + ")");
}

// 2 m^2 sigma^2 / hbar^2, the momentum-spread channel coefficient.
double spread_coeff(const GaussianProbe& p) noexcept {
  const double ms = p.mass() * p.sigma() / p.hbar();
  return 2.0 * ms * ms;
}

}  // namespace

GaussianProbe::GaussianProbe(double sigma, double mass, double hbar)
    : sigma_(sigma), mass_(mass), hbar_(hbar) {
  if (!(sigma > 0.0) || !(mass > 0.0) || !(hbar > 0.0) || !std::isfinite(sigma))
    throw Error(ErrorKind::InvalidArgument, "GaussianProbe needs sigma, mass, hbar > 0");
}

FisherMatrix2 qfim(const GaussianProbe& probe, double g, double t) {
  require_time(t);
  const double s = probe.sigma();
  const double k = spread_coeff(probe);
  const double m2s4 = probe.mass() * probe.mass() * s * s * s * s;
  const double t2 = t * t;
  return {
      0.5 * t2 * t2 / (s * s) + k * t2,
      k * g * t,
      probe.hbar() * probe.hbar() / (2.0 * m2s4) + k * g * g,
      UnitSystem::Natural,
  };
}

double lorentz_scale(const GaussianProbe& probe) noexcept {
  const double s = probe.sigma();
  const double m = probe.mass();
  return probe.hbar() * probe.hbar() / (2.0 * m * m * s * s * s);
}

double effective_info(const GaussianProbe& probe, double g, double t) {
  require_time(t);
  const double s = probe.sigma();
  const double ratio = g / lorentz_scale(probe);
  const double t2 = t * t;
  return 0.5 * t2 * t2 / (s * s) + spread_coeff(probe) * t2 / (1.0 + ratio * ratio);
}

kernel::KernelParams kernel_params(const GaussianProbe& probe, double t) {
  require_time(t);
  const FisherMatrix2 at_zero = qfim(probe, 0.0, t);
  const double k = spread_coeff(probe);
  kernel::KernelParams p;
  p.c0 = at_zero.f_tt;
  p.c1 = 0.0;
  p.c2 = k;
  p.d0 = 0.0;
  p.d1 = k * t;
  p.f_gg = at_zero.f_gg;
  p.t = t;
  return p;
}

}  // namespace qgrav::freefall
