#include "qgrav/core.hpp"

#include <cmath>

#include "qgrav/errors.hpp"

namespace qgrav {

std::string to_string(UnitSystem units) {
  return units == UnitSystem::SI ? "SI" : "natural";
}

bool FisherMatrix2::is_psd(double tol_rel, double tol_abs) const noexcept {
  if (f_gg < -tol_abs || f_tt < -tol_abs) return false;
  return det() >= -tol_rel * std::abs(f_gg * f_tt) - tol_abs * tol_abs;
}

PriorInfo PriorInfo::from_information(double i_t_prior) {
  // +inf is allowed: perfect timing knowledge
  if (std::isnan(i_t_prior) || i_t_prior < 0.0)
    throw Error(ErrorKind::InvalidArgument,
                "prior information must be >= 0 (got " + std::to_string(i_t_prior) + ")");
  return PriorInfo(i_t_prior);
}

PriorInfo PriorInfo::from_timing_resolution(double delta_t_prior) {
  if (!(delta_t_prior > 0.0))
    throw Error(ErrorKind::InvalidArgument,
                "timing resolution must be > 0 (got " + std::to_string(delta_t_prior) + ")");
  return PriorInfo(1.0 / (delta_t_prior * delta_t_prior));
}

double schur_effective(const FisherMatrix2& f) {
  if (!(f.f_tt > kTolAbs))
    throw Error(ErrorKind::DegenerateTimingBlock,
                "f_tt = " + std::to_string(f.f_tt) + " is singular; use regularized_effective");
  return f.f_gg - f.f_gt * f.f_gt / f.f_tt;
}

double regularized_effective(const FisherMatrix2& f, const PriorInfo& prior) {
  const double denom = f.f_tt + prior.information();
  if (!(denom > kTolAbs)) {
    if (f.f_gt == 0.0) return f.f_gg;
    throw Error(ErrorKind::DegenerateTimingBlock,
                "f_tt + i_t_prior = " + std::to_string(denom) + " with nonzero f_gt");
  }
  if (std::isinf(denom)) return f.f_gg;
  return f.f_gg - f.f_gt * f.f_gt / denom;
}

double correlation(const FisherMatrix2& f) {
  if (!(f.f_gg > kTolAbs) || !(f.f_tt > kTolAbs))
    throw Error(ErrorKind::DegenerateBlock, "correlation needs f_gg > 0 and f_tt > 0 (got " +
                                                std::to_string(f.f_gg) + ", " +
                                                std::to_string(f.f_tt) + ")");
  return (f.f_gt * f.f_gt) / (f.f_gg * f.f_tt);
}

double retention(const FisherMatrix2& f) {
  if (!(f.f_gg > kTolAbs))
    throw Error(ErrorKind::DegenerateBlock, "retention needs f_gg > 0");
  return schur_effective(f) / f.f_gg;
}

double crlb_variance(double f_eff, long n_repetitions) {
  if (n_repetitions < 1)
    throw Error(ErrorKind::InvalidArgument, "n_repetitions must be >= 1");
  if (!(f_eff > 0.0))
    throw Error(ErrorKind::NonpositiveInformation,
                "effective information " + std::to_string(f_eff) + " <= 0");
  return 1.0 / (static_cast<double>(n_repetitions) * f_eff);
}

}  // namespace qgrav
