#pragma once

// SI-side mapping of literature source temperatures and interrogation times
// onto the full-state KC and free-fall retention laws for 87Rb gravimeters.

#include <span>
#include <string>
#include <vector>

namespace qgrav::experiments {

struct PhysicalConstants {
  static constexpr double hbar = 1.0545718e-34;         // J s
  static constexpr double k_boltzmann = 1.380649e-23;   // J / K
  static constexpr double m_rb87 = 1.443e-25;           // kg
  static constexpr double g_standard = 9.81;            // m / s^2
};

struct PlatformSpec {
  std::string label;
  double t_src = 0.0;  // K
  double t_int = 0.0;  // s
  std::string notes;   // caveat carried into every output row

  /// Throws InvalidArgument unless t_src > 0 and t_int > 0.
  void validate() const;
};

/// AQG 60 ms, Einstein Elevator 100 and 130 ms, Stanford fountain 160 ms,
/// MIGA 250 ms (source-scale caveat), GAIN 260 ms.
std::vector<PlatformSpec> reference_platforms();

/// 2 uK source temperature used for the AQG, Stanford, MIGA and GAIN rows.
inline constexpr double kMicroKelvinSource = 2e-6;
inline constexpr double kEinsteinElevatorSource = 7.5e-6;
inline constexpr double kUltracoldProxy = 30e-9;

/// sqrt(kB T / m), one-dimensional rms.
double thermal_sigma_v(double t_src, double mass = PhysicalConstants::m_rb87);

/// hbar / (sqrt(2) m sigma_v).
double gaussian_width_proxy(double sigma_v, double mass = PhysicalConstants::m_rb87);

/// Full-state KC retention sigma_v^2 / (sigma_v^2 + g^2 T^2) for the platform.
double retention_estimate(const PlatformSpec& spec);

/// alpha(R0) = sqrt(R0 / (1 - R0)); throws InvalidTarget outside (0, 1).
double retention_alpha(double r0);

/// g T alpha(R0).
double required_sigma_v(double r0, double t_int);

/// hbar / (2 m alpha(R0) g T).
double localization_bound(double r0, double t_int, double mass = PhysicalConstants::m_rb87);

/// Retention of the minimum-uncertainty Gaussian proxy with the same
/// momentum width, from the free-fall effective information ratio.
double freefall_proxy_retention(double sigma_v, double t_int, double mass = PhysicalConstants::m_rb87);

struct Figure3Row {
  std::string platform;
  double t_src = 0.0;
  double sigma_v = 0.0;
  double t_int = 0.0;
  double retention_kc = 0.0;
  double retention_freefall_proxy = 0.0;
  std::string caveat;
};

/// Curves for each source on t_grid, then one marker row per platform.
std::vector<Figure3Row> figure3_table(std::span<const PlatformSpec> platforms, std::span<const double> t_grid);

/// Default sources for the curves: 2 uK, 7.5 uK and the 30 nK proxy.
std::vector<PlatformSpec> figure3_sources();

struct GoldenNumbers {
  double sigma_v_2uk = 0.0;
  double retention_aqg = 0.0;
  double retention_gain = 0.0;
  double required_aqg_half = 0.0;
  double required_aqg_ninety = 0.0;
  double required_gain_half = 0.0;
  double required_gain_ninety = 0.0;
  double bound_aqg_half = 0.0;
  double bound_aqg_ninety = 0.0;
  double bound_gain_half = 0.0;
  double bound_gain_ninety = 0.0;
  // required sigma_v over the 2 uK thermal scale
  double ratio_aqg_half = 0.0;
  double ratio_aqg_ninety = 0.0;
  double ratio_gain_half = 0.0;
  double ratio_gain_ninety = 0.0;
};

/// The AQG (60 ms) and GAIN (260 ms) baselines at 2 uK, R0 in {1/2, 0.9}.
GoldenNumbers golden_numbers();

}  // namespace qgrav::experiments
