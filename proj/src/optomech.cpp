#include "qgrav/optomech.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>

#include "qgrav/errors.hpp"
#include "qgrav/oracle/qfim.hpp"

namespace qgrav::optomech {

void OptoConfig::validate() const {
  if (!(mu >= 0.0)) throw Error(ErrorKind::InvalidArgument, "mu must be >= 0");
  if (!(kbar >= 0.0)) throw Error(ErrorKind::InvalidArgument, "kbar must be >= 0");
  if (!(a_coef > 0.0)) throw Error(ErrorKind::InvalidArgument, "a_coef must be > 0");
  if (!std::isfinite(beta_r) || !std::isfinite(beta_i) || !std::isfinite(delta))
    throw Error(ErrorKind::InvalidArgument, "beta_r, beta_i and delta must be finite");
  if (fock_dim != 0 && fock_dim < 2) throw Error(ErrorKind::InvalidArgument, "fock_dim must be >= 2");
}

double zeta(MechTime t) noexcept { return t.value - std::sin(t.value); }

double cross_term(const OptoConfig& cfg, double g, MechTime t) {
  const double s = std::sin(t.value);
  const double c = 1.0 - std::cos(t.value);
  const double a = cfg.a_coef;
  return a * (-16.0 * cfg.kbar * cfg.kbar * cfg.mu * zeta(t) * c * cfg.beta_r +
              2.0 * (-s * (cfg.kbar * cfg.mu - a * g - cfg.beta_r) + c * cfg.beta_i));
}

AffineCoeffs affine_coeffs(const OptoConfig& cfg, MechTime t) {
  return {cross_term(cfg, 0.0, t), 2.0 * cfg.a_coef * cfg.a_coef * std::sin(t.value)};
}

kernel::AxisParams axis_params(const OptoConfig& cfg) {
  cfg.validate();
  const double tuned = cfg.delta + 2.0 * cfg.kbar * cfg.beta_r;
  const double radicand = cfg.beta_i * cfg.beta_i + cfg.kbar * cfg.kbar * cfg.mu + cfg.mu * tuned * tuned;
  if (!(radicand > 1e-12))
    throw Error(ErrorKind::DegenerateAxis, "g_* radicand is " + std::to_string(radicand));
  return kernel::AxisParams::make((cfg.kbar * cfg.mu - cfg.beta_r) / cfg.a_coef, std::sqrt(radicand) / cfg.a_coef);
}

oracle::FockModel fock_model(const OptoConfig& cfg, double g_max) {
  cfg.validate();
  oracle::FockModel m;
  m.kbar = cfg.kbar;
  m.mu = cfg.mu;
  m.beta_r = cfg.beta_r;
  m.beta_i = cfg.beta_i;
  m.delta = cfg.delta;
  m.a_coef = cfg.a_coef;
  if (cfg.fock_dim == 0 || cfg.photon_max < 0) {
    m = oracle::FockModel::with_auto_truncation(m, g_max);
    if (cfg.fock_dim != 0) m.fock_dim = cfg.fock_dim;
    if (cfg.photon_max >= 0) m.photon_max = cfg.photon_max;
  } else {
    m.fock_dim = cfg.fock_dim;
    m.photon_max = cfg.photon_max;
  }
  m.validate(g_max);
  return m;
}

CorrelationField correlation_field(const OptoConfig& cfg, std::span<const double> u_grid,
                                   std::span<const double> t_grid, const FieldOptions& opts) {
  const kernel::AxisParams axis = axis_params(cfg);
  CorrelationField field;
  field.u_grid.assign(u_grid.begin(), u_grid.end());
  field.t_grid.assign(t_grid.begin(), t_grid.end());
  double g_max = 0.0;
  for (const double u : u_grid) g_max = std::max(g_max, std::abs(axis.g_c() + u * axis.g_star()));
  const oracle::FockModel model = fock_model(cfg, g_max);
  field.fock_dim = model.fock_dim;
  field.photon_max = model.photon_max;

  const std::size_t nu = u_grid.size();
  const std::size_t nt = t_grid.size();
  field.cells.resize(nu * nt);
  std::vector<std::exception_ptr> failures(nu);

#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < static_cast<long>(nu); ++i) {
    const auto iu = static_cast<std::size_t>(i);
    try {
      const double u = u_grid[iu];
      const double g = axis.g_c() + u * axis.g_star();
      const oracle::FockGenerator gen(model, g);
      for (std::size_t j = 0; j < nt; ++j) {
        CorrelationCell& c = field.cells[iu * nt + j];
        c.u = u;
        c.t = t_grid[j];
        c.g = g;
        const FisherMatrix2 f = gen.qfim(c.t, opts.n_quadrature);
        c.f_gg = f.f_gg;
        c.f_tt = f.f_tt;
        c.f_gt_oracle = f.f_gt;
        c.f_gt = cross_term(cfg, g, MechTime(c.t));
        const double diag = c.f_gg * c.f_tt;
        if (!(diag > 0.0)) {
          // t = 0: no gravity information yet; report an uncorrelated cell
          c.rho2 = c.rho2_oracle = 0.0;
        } else {
          c.rho2 = c.f_gt * c.f_gt / diag;
          c.rho2_oracle = c.f_gt_oracle * c.f_gt_oracle / diag;
        }
        if (c.rho2 > 1.0 + 1e-9)
          throw Error(ErrorKind::KernelOutOfRange, "rho^2 = " + std::to_string(c.rho2) + " at u = " +
                                                       std::to_string(u) + ", t = " + std::to_string(c.t));
        const double r = std::max(0.0, 1.0 - c.rho2);
        c.degradation = r > 0.0 ? 1.0 / std::sqrt(r) - 1.0 : INFINITY;
      }
    } catch (...) {
      failures[iu] = std::current_exception();
    }
  }
  for (const auto& e : failures)
    if (e) std::rethrow_exception(e);
  return field;
}

kernel::KernelParams harvested_kernel_params(const OptoConfig& cfg, MechTime t, int n_quadrature) {
  const oracle::FockModel model = fock_model(cfg, 0.0);
  return oracle::harvest_kernel_params(model, t.value, n_quadrature);
}

}  // namespace qgrav::optomech
