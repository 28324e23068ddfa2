#include "qgrav/kasevich_chu.hpp"

#include <cmath>
#include <string>

#include "qgrav/errors.hpp"

namespace qgrav::kc {

void KCConfig::validate() const {
  if (!(k0 > 0.0)) throw Error(ErrorKind::InvalidArgument, "k0 must be > 0");
  if (!(T > 0.0)) throw Error(ErrorKind::InvalidArgument, "T must be > 0");
  if (!(contrast >= 0.0 && contrast <= 1.0))
    throw Error(ErrorKind::InvalidArgument, "contrast must lie in [0, 1]");
  if (!(sigma_v >= 0.0)) throw Error(ErrorKind::InvalidArgument, "sigma_v must be >= 0");
  if (n_atoms < 1) throw Error(ErrorKind::InvalidArgument, "n_atoms must be >= 1");
  if (!std::isfinite(g) || !std::isfinite(phi_ctrl))
    throw Error(ErrorKind::InvalidArgument, "g and phi_ctrl must be finite");
}

double delta_phi(const KCConfig& cfg) noexcept {
  return -cfg.k0 * cfg.g * cfg.T * cfg.T - cfg.phi_ctrl;
}

double fringe_probability(const KCConfig& cfg) {
  cfg.validate();
  return 0.5 * (1.0 - cfg.contrast * std::cos(delta_phi(cfg)));
}

FisherMatrix2 internal_fisher(const KCConfig& cfg) {
  cfg.validate();
  // I_Phi (d_i Phi)(d_j Phi) with I_Phi = C^2, d_g Phi = -k0 T^2, d_T Phi = -2 k0 g T.
  const double ck = cfg.contrast * cfg.k0;
  const double dg = cfg.T * cfg.T;
  const double dT = 2.0 * cfg.g * cfg.T;
  const double scale = ck * ck;
  return {scale * dg * dg, scale * dg * dT, scale * dT * dT, UnitSystem::Natural};
}

double internal_effective_regularized(const KCConfig& cfg, const PriorInfo& prior) {
  cfg.validate();
  const double i_prior = prior.information();
  const double ck = cfg.contrast * cfg.k0;
  const double ideal = ck * ck * cfg.T * cfg.T * cfg.T * cfg.T;
  if (cfg.g == 0.0) return ideal;
  if (!(i_prior > 0.0))
    throw Error(ErrorKind::SingularWithoutPrior,
                "internal readout is rank one; a positive timing prior is required (g = " +
                    std::to_string(cfg.g) + ")");
  if (std::isinf(i_prior)) return ideal;
  const double f_TT = 4.0 * ck * ck * cfg.g * cfg.g * cfg.T * cfg.T;
  return ideal / (1.0 + f_TT / i_prior);
}

FisherMatrix2 fullstate_qfim(const KCConfig& cfg) {
  cfg.validate();
  const double k2 = cfg.k0 * cfg.k0;
  const double T = cfg.T;
  const double n = static_cast<double>(cfg.n_atoms);
  FisherMatrix2 f{
      k2 * T * T * T * T,
      2.0 * k2 * cfg.g * T * T * T,
      4.0 * k2 * cfg.g * cfg.g * T * T + 4.0 * k2 * cfg.sigma_v * cfg.sigma_v,
      UnitSystem::Natural,
  };
  return f.scaled(n);
}

double fullstate_effective(const KCConfig& cfg) {
  cfg.validate();
  if (cfg.sigma_v == 0.0 && cfg.g == 0.0)
    throw Error(ErrorKind::DegenerateTimingBlock, "sigma_v = 0 and g = 0 leave F_TT = 0");
  const double T = cfg.T;
  const double n = static_cast<double>(cfg.n_atoms);
  return n * cfg.k0 * cfg.k0 * T * T * T * T * fullstate_retention(cfg.g, T, cfg.sigma_v);
}

double fullstate_retention(double g, double T, double sigma_v) {
  if (!(sigma_v >= 0.0)) throw Error(ErrorKind::InvalidArgument, "sigma_v must be >= 0");
  const double s2 = sigma_v * sigma_v;
  const double gt = g * T;
  if (s2 == 0.0 && gt == 0.0)
    throw Error(ErrorKind::Indeterminate, "sigma_v = 0 and g T = 0");
  return s2 / (s2 + gt * gt);
}

kernel::KernelParams fullstate_kernel_params(const KCConfig& cfg) {
  cfg.validate();
  const double n = static_cast<double>(cfg.n_atoms);
  const double k2 = cfg.k0 * cfg.k0;
  const double T = cfg.T;
  kernel::KernelParams p;
  p.c0 = n * 4.0 * k2 * cfg.sigma_v * cfg.sigma_v;
  p.c1 = 0.0;
  p.c2 = n * 4.0 * k2 * T * T;
  p.d0 = 0.0;
  p.d1 = n * 2.0 * k2 * T * T * T;
  p.f_gg = n * k2 * T * T * T * T;
  p.t = T;
  return p;
}

kernel::KernelParams internal_regularized_kernel_params(const KCConfig& cfg, const PriorInfo& prior) {
  const FisherMatrix2 unit_g = internal_fisher(KCConfig{cfg.k0, cfg.T, cfg.contrast, 1.0,
                                                        cfg.sigma_v, cfg.n_atoms, cfg.phi_ctrl});
  kernel::KernelParams p;
  p.c0 = prior.information();
  p.c1 = 0.0;
  p.c2 = unit_g.f_tt;
  p.d0 = 0.0;
  p.d1 = unit_g.f_gt;
  p.f_gg = unit_g.f_gg;
  p.t = cfg.T;
  return p;
}

}  // namespace qgrav::kc
