#pragma once

// Two-parameter (g, t) information geometry: the 2x2 Fisher matrix, nuisance
// profiling by Schur complement, and the derived correlation/retention scalars.

#include <string>

namespace qgrav {

/// Absolute threshold below which a diagonal information entry is treated as
/// singular in the working unit system.
inline constexpr double kTolAbs = 1e-12;

/// Unit system a FisherMatrix2 was computed in. Model modules work in
/// dimensionless natural units; SI only appears at the experiments/CLI edge.
enum class UnitSystem { Natural, SI };

std::string to_string(UnitSystem units);

/// Symmetric information matrix over the ordered pair (g, t). Only the three
/// independent entries are stored.
struct FisherMatrix2 {
  double f_gg = 0.0;
  double f_gt = 0.0;
  double f_tt = 0.0;
  UnitSystem units = UnitSystem::Natural;

  double det() const noexcept { return f_gg * f_tt - f_gt * f_gt; }

  /// Diagonal entries nonnegative (within tol_abs) and det >= -tol_rel * f_gg * f_tt.
  bool is_psd(double tol_rel = 1e-9, double tol_abs = kTolAbs) const noexcept;

  FisherMatrix2 scaled(double factor) const noexcept {
    return {f_gg * factor, f_gt * factor, f_tt * factor, units};
  }
};

/// Independent Fisher information about the nuisance time.
class PriorInfo {
 public:
  PriorInfo() = default;

  /// Throws InvalidArgument for negative or NaN information; +inf is perfect timing.
  static PriorInfo from_information(double i_t_prior);
  /// I = 1/dt^2; throws InvalidArgument unless dt > 0.
  static PriorInfo from_timing_resolution(double delta_t_prior);
  static PriorInfo none() { return {}; }

  double information() const noexcept { return i_t_prior_; }

 private:
  explicit PriorInfo(double i) : i_t_prior_(i) {}
  double i_t_prior_ = 0.0;
};

/// F_gg - F_gt^2 / F_tt. Throws DegenerateTimingBlock when F_tt <= kTolAbs.
double schur_effective(const FisherMatrix2& f);

/// F_gg - F_gt^2 / (F_tt + I_prior). Throws DegenerateTimingBlock only when
/// both F_tt and I_prior vanish while F_gt does not.
double regularized_effective(const FisherMatrix2& f, const PriorInfo& prior);

/// rho^2 = F_gt^2 / (F_gg F_tt). Throws DegenerateBlock for a vanishing diagonal.
double correlation(const FisherMatrix2& f);

/// schur_effective(f) / F_gg, i.e. 1 - rho^2.
double retention(const FisherMatrix2& f);

/// Local Cramer-Rao variance bound 1/(N F_eff).
double crlb_variance(double f_eff, long n_repetitions);

}  // namespace qgrav
