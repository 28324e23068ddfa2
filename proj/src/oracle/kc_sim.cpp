#include "qgrav/oracle/kc_sim.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "qgrav/errors.hpp"

namespace qgrav::oracle {

namespace {

using cplx = std::complex<double>;

struct TwoLevel {
  Eigen::VectorXcd a;  // lower
  Eigen::VectorXcd b;  // upper
};

// E = exp(i (k0 z - phi)) on the grid.
Eigen::VectorXcd recoil(const GridModel& model, double k0, double phi) {
  Eigen::VectorXcd e(static_cast<Eigen::Index>(model.n_points));
  for (std::size_t j = 0; j < model.n_points; ++j)
    e[static_cast<Eigen::Index>(j)] = std::polar(1.0, k0 * model.z(j) - phi);
  return e;
}

void half_pulse(TwoLevel& s, const Eigen::VectorXcd& e) {
  const cplx mi(0.0, -1.0);
  const Eigen::VectorXcd a = (s.a.array() + mi * e.conjugate().array() * s.b.array()) / std::sqrt(2.0);
  const Eigen::VectorXcd b = (mi * e.array() * s.a.array() + s.b.array()) / std::sqrt(2.0);
  s.a = a;
  s.b = b;
}

void full_pulse(TwoLevel& s, const Eigen::VectorXcd& e) {
  const cplx mi(0.0, -1.0);
  const Eigen::VectorXcd a = mi * (e.conjugate().array() * s.b.array()).matrix();
  const Eigen::VectorXcd b = mi * (e.array() * s.a.array()).matrix();
  s.a = a;
  s.b = b;
}

double unresolved_weight(const GridModel& model, const Eigen::VectorXcd& psi) {
  const auto n = static_cast<Eigen::Index>(model.n_points);
  const Eigen::Index band = std::max<Eigen::Index>(1, n / 32);
  double w = psi.head(band).squaredNorm() + psi.tail(band).squaredNorm();
  Eigen::VectorXcd spec = psi;
  Fft(model.n_points).forward(spec);
  double tail = 0.0;
  for (std::size_t j = 0; j < model.n_points; ++j)
    if (std::abs(model.k(j)) > 0.875 * model.k_max()) tail += std::norm(spec[static_cast<Eigen::Index>(j)]);
  // absolute weight: a nearly empty component must not count as unresolved
  return w + tail / static_cast<double>(model.n_points);
}

}  // namespace

double wrap_phase(double phi) noexcept {
  const double two_pi = 2.0 * std::numbers::pi;
  double r = std::remainder(phi, two_pi);
  if (r <= -std::numbers::pi) r += two_pi;
  return r;
}

double kc_fringe_sim(const kc::KCConfig& cfg, const GridModel& model, const PulsePhases& phases) {
  cfg.validate();
  model.validate();
  const SplitStep stepper(model);
  const std::size_t steps = stepper.steps_for(cfg.T);

  TwoLevel s{model.initial_state, Eigen::VectorXcd::Zero(model.initial_state.size())};
  half_pulse(s, recoil(model, cfg.k0, phases.phi1));
  stepper.evolve(s.a, cfg.g, cfg.T, steps);
  stepper.evolve(s.b, cfg.g, cfg.T, steps);
  full_pulse(s, recoil(model, cfg.k0, phases.phi2));
  stepper.evolve(s.a, cfg.g, cfg.T, steps);
  stepper.evolve(s.b, cfg.g, cfg.T, steps);
  half_pulse(s, recoil(model, cfg.k0, phases.phi3));

  const double loss = unresolved_weight(model, s.a) + unresolved_weight(model, s.b);
  if (loss > 1e-10)
    throw Error(ErrorKind::GridUnderResolved,
                "wavepacket weight at the box or momentum edge is " + std::to_string(loss));
  return s.b.squaredNorm();
}

KCSimResult kc_pulse_sim(const kc::KCConfig& cfg, const GridModel& model) {
  const PulsePhases phases{0.0, 0.0, cfg.phi_ctrl};
  KCSimResult r;
  r.p_b = kc_fringe_sim(cfg, model, phases);

  const auto at = [&](double g, double T) {
    kc::KCConfig c = cfg;
    c.g = g;
    c.T = T;
    return kc_fringe_sim(c, model, phases);
  };
  const double hg = 1e-4 / (cfg.k0 * cfg.T * cfg.T);
  const double hT = 1e-4 * cfg.T;
  const double dg = (at(cfg.g + hg, cfg.T) - at(cfg.g - hg, cfg.T)) / (2.0 * hg);
  const double dT = (at(cfg.g, cfg.T + hT) - at(cfg.g, cfg.T - hT)) / (2.0 * hT);

  const double var = r.p_b * (1.0 - r.p_b);
  if (var > 1e-12) {
    const double f_gg = dg * dg / var;
    const double f_gt = dg * dT / var;
    const double f_tt = dT * dT / var;
    const double scale = f_gg * f_tt;
    r.fisher_rank1_residual = scale > 0.0 ? std::abs(f_gg * f_tt - f_gt * f_gt) / scale : 0.0;
  }
  const double lhs = cfg.T * dT;
  const double rhs = 2.0 * cfg.g * dg;
  const double denom = std::abs(lhs) + std::abs(rhs);
  r.direction_residual = denom > 0.0 ? std::abs(lhs - rhs) / denom : 0.0;
  return r;
}

FringeFit kc_fringe_fit(const kc::KCConfig& cfg, const GridModel& model, int n_points) {
  if (n_points < 3) throw Error(ErrorKind::InvalidArgument, "fringe fit needs at least 3 phase points");
  Eigen::MatrixXd design(n_points, 3);
  Eigen::VectorXd p(n_points);
  Eigen::VectorXd phi(n_points);
  for (int j = 0; j < n_points; ++j) {
    phi[j] = cfg.phi_ctrl + 2.0 * std::numbers::pi * j / n_points;
    p[j] = kc_fringe_sim(cfg, model, PulsePhases{0.0, 0.0, phi[j]});
    design(j, 0) = 1.0;
    design(j, 1) = std::cos(phi[j]);
    design(j, 2) = std::sin(phi[j]);
  }
  const Eigen::Vector3d coef = design.colPivHouseholderQr().solve(p);
  FringeFit fit;
  fit.offset = coef[0];
  fit.contrast = 2.0 * std::hypot(coef[1], coef[2]);
  // P = (1/2)[1 - C cos(Phi0 - phi)]  =>  c = -(C/2) cos Phi0, s = -(C/2) sin Phi0
  const double phi0 = std::atan2(-coef[2], -coef[1]);
  fit.delta_phi = wrap_phase(phi0 - cfg.phi_ctrl);
  fit.max_fit_residual = (design * coef - p).cwiseAbs().maxCoeff();
  return fit;
}

}  // namespace qgrav::oracle
