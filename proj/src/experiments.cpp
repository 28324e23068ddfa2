#include "qgrav/experiments.hpp"

#include <cmath>
#include <string>

#include "qgrav/errors.hpp"
#include "qgrav/freefall.hpp"
#include "qgrav/kasevich_chu.hpp"
#include "qgrav/units.hpp"

namespace qgrav::experiments {

using C = PhysicalConstants;

namespace {

constexpr const char* kMigaCaveat = "source-scale comparison only; velocity-selected input is much narrower";

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw Error(ErrorKind::InvalidArgument, std::string(name) + " must be finite and > 0 (got " + std::to_string(v) + ")");
}

}  // namespace

void PlatformSpec::validate() const {
  require_positive(t_src, "t_src");
  require_positive(t_int, "t_int");
}

std::vector<PlatformSpec> reference_platforms() {
  return {
      {"AQG", kMicroKelvinSource, 0.060, ""},
      {"Einstein Elevator", kEinsteinElevatorSource, 0.100, ""},
      {"Einstein Elevator (extended)", kEinsteinElevatorSource, 0.130, ""},
      {"Stanford fountain", kMicroKelvinSource, 0.160, ""},
      {"MIGA", kMicroKelvinSource, 0.250, kMigaCaveat},
      {"GAIN", kMicroKelvinSource, 0.260, ""},
  };
}

std::vector<PlatformSpec> figure3_sources() {
  return {
      {"KC 2uK", kMicroKelvinSource, 0.0, ""},
      {"KC 7.5uK", kEinsteinElevatorSource, 0.0, ""},
      {"free-fall proxy 30nK", kUltracoldProxy, 0.0, ""},
  };
}

double thermal_sigma_v(double t_src, double mass) {
  require_positive(t_src, "t_src");
  require_positive(mass, "mass");
  return std::sqrt(C::k_boltzmann * t_src / mass);
}

double gaussian_width_proxy(double sigma_v, double mass) {
  require_positive(sigma_v, "sigma_v");
  require_positive(mass, "mass");
  return C::hbar / (std::sqrt(2.0) * mass * sigma_v);
}

double retention_estimate(const PlatformSpec& spec) {
  spec.validate();
  return kc::fullstate_retention(C::g_standard, spec.t_int, thermal_sigma_v(spec.t_src));
}

double retention_alpha(double r0) {
  if (!(r0 > 0.0 && r0 < 1.0))
    throw Error(ErrorKind::InvalidTarget, "target retention must lie in (0, 1) (got " + std::to_string(r0) + ")");
  return std::sqrt(r0 / (1.0 - r0));
}

double required_sigma_v(double r0, double t_int) {
  const double a = retention_alpha(r0);
  require_positive(t_int, "t_int");
  return C::g_standard * t_int * a;
}

double localization_bound(double r0, double t_int, double mass) {
  const double a = retention_alpha(r0);
  require_positive(t_int, "t_int");
  require_positive(mass, "mass");
  return C::hbar / (2.0 * mass * a * C::g_standard * t_int);
}

double freefall_proxy_retention(double sigma_v, double t_int, double mass) {
  require_positive(t_int, "t_int");  // F_gg vanishes at t = 0
  // Natural units: hbar = m = 1, length in units of the proxy width.
  const units::NaturalScale scale(C::hbar, mass, gaussian_width_proxy(sigma_v, mass));
  const freefall::GaussianProbe probe(1.0);
  const double g = scale.acceleration_to_natural(C::g_standard);
  const double t = scale.time_to_natural(t_int);
  return freefall::effective_info(probe, g, t) / freefall::qfim(probe, g, t).f_gg;
}

std::vector<Figure3Row> figure3_table(std::span<const PlatformSpec> platforms, std::span<const double> t_grid) {
  std::vector<Figure3Row> rows;
  for (const PlatformSpec& src : figure3_sources()) {
    const double sv = thermal_sigma_v(src.t_src);
    for (const double t : t_grid) {
      require_positive(t, "t grid value");
      rows.push_back({src.label, src.t_src, sv, t, kc::fullstate_retention(C::g_standard, t, sv),
                      freefall_proxy_retention(sv, t), src.notes});
    }
  }
  for (const PlatformSpec& p : platforms) {
    p.validate();
    const double sv = thermal_sigma_v(p.t_src);
    rows.push_back({p.label, p.t_src, sv, p.t_int, retention_estimate(p), freefall_proxy_retention(sv, p.t_int),
                    p.notes});
  }
  return rows;
}

GoldenNumbers golden_numbers() {
  GoldenNumbers n;
  n.sigma_v_2uk = thermal_sigma_v(kMicroKelvinSource);
  n.retention_aqg = retention_estimate({"AQG", kMicroKelvinSource, 0.060, ""});
  n.retention_gain = retention_estimate({"GAIN", kMicroKelvinSource, 0.260, ""});
  n.required_aqg_half = required_sigma_v(0.5, 0.060);
  n.required_aqg_ninety = required_sigma_v(0.9, 0.060);
  n.required_gain_half = required_sigma_v(0.5, 0.260);
  n.required_gain_ninety = required_sigma_v(0.9, 0.260);
  n.bound_aqg_half = localization_bound(0.5, 0.060);
  n.bound_aqg_ninety = localization_bound(0.9, 0.060);
  n.bound_gain_half = localization_bound(0.5, 0.260);
  n.bound_gain_ninety = localization_bound(0.9, 0.260);
  n.ratio_aqg_half = n.required_aqg_half / n.sigma_v_2uk;
  n.ratio_aqg_ninety = n.required_aqg_ninety / n.sigma_v_2uk;
  n.ratio_gain_half = n.required_gain_half / n.sigma_v_2uk;
  n.ratio_gain_ninety = n.required_gain_ninety / n.sigma_v_2uk;
  return n;
}

}  // namespace qgrav::experiments
