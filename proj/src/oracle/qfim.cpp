#include "qgrav/oracle/qfim.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "qgrav/errors.hpp"

namespace qgrav::oracle {

namespace {

using cplx = std::complex<double>;

FisherMatrix2 fd_once(const StateFamily& family, double g, double t, double hg, double ht, Stencil stencil) {
  const Eigen::VectorXcd psi = family(g, t);
  Eigen::VectorXcd dg, dt;
  if (stencil == Stencil::Central2) {
    dg = (family(g + hg, t) - family(g - hg, t)) / (2.0 * hg);
    dt = (family(g, t + ht) - family(g, t - ht)) / (2.0 * ht);
  } else {
    dg = (-family(g + 2 * hg, t) + 8.0 * family(g + hg, t) - 8.0 * family(g - hg, t) + family(g - 2 * hg, t)) /
         (12.0 * hg);
    dt = (-family(g, t + 2 * ht) + 8.0 * family(g, t + ht) - 8.0 * family(g, t - ht) + family(g, t - 2 * ht)) /
         (12.0 * ht);
  }
  return qfim_from_derivatives(psi, dg, dt);
}

void require_steps(double t, double step_g, double step_t) {
  if (!(step_g > 0.0) || !(step_t > 0.0))
    throw Error(ErrorKind::InvalidArgument, "finite-difference steps must be > 0");
  if (!(t - 2.0 * step_t >= 0.0))
    throw Error(ErrorKind::InvalidArgument, "t must exceed twice the time step (stencil reaches t - 2 step_t)");
}

void require_quadrature(int n_quadrature) {
  if (n_quadrature < 16)
    throw Error(ErrorKind::InvalidArgument, "n_quadrature must be >= 16 (got " + std::to_string(n_quadrature) + ")");
}

// exp(i a) - 1 without cancellation.
cplx expm1_i(double a) {
  const double s = std::sin(0.5 * a);
  return {-2.0 * s * s, std::sin(a)};
}

// Trapezoid rule for int_0^t exp(i w s) ds on n panels, with the node sum
// taken as a geometric series.
cplx trapezoid_phase(double w, double t, int n) {
  const double h = t / n;
  const double a = w * h;
  const cplx den = expm1_i(a);
  const cplx sum = (std::abs(den) == 0.0) ? cplx(n + 1.0) : expm1_i(a * (n + 1)) / den;
  return h * (sum - 0.5 * (1.0 + std::polar(1.0, w * t)));
}

FisherMatrix2 converged(const std::function<FisherMatrix2(int)>& eval, int n_quadrature) {
  require_quadrature(n_quadrature);
  const FisherMatrix2 coarse = eval(n_quadrature);
  const FisherMatrix2 fine = eval(2 * n_quadrature);
  const double change = relative_change(coarse, fine);
  if (change > 1e-6)
    throw Error(ErrorKind::QuadratureNotConverged,
                "doubling n_quadrature moved an entry by " + std::to_string(change) + " relative");
  return fine;
}

}  // namespace

double relative_change(const FisherMatrix2& a, const FisherMatrix2& b) {
  const auto scaled = [](double d, double s) { return s > 0.0 ? d / s : d; };
  const double sgg = std::max(std::abs(a.f_gg), std::abs(b.f_gg));
  const double stt = std::max(std::abs(a.f_tt), std::abs(b.f_tt));
  return std::max({scaled(std::abs(a.f_gg - b.f_gg), sgg), scaled(std::abs(a.f_tt - b.f_tt), stt),
                   scaled(std::abs(a.f_gt - b.f_gt), std::sqrt(sgg * stt))});
}

FisherMatrix2 qfim_from_derivatives(const Eigen::VectorXcd& psi, const Eigen::VectorXcd& d_g,
                                    const Eigen::VectorXcd& d_t) {
  const cplx bg = psi.dot(d_g);  // <psi|d_g psi>
  const cplx bt = psi.dot(d_t);
  const auto entry = [&](const Eigen::VectorXcd& a, const Eigen::VectorXcd& b, cplx ba, cplx bb) {
    return 4.0 * (a.dot(b) - std::conj(ba) * bb).real();
  };
  return {entry(d_g, d_g, bg, bg), entry(d_g, d_t, bg, bt), entry(d_t, d_t, bt, bt), UnitSystem::Natural};
}

FisherMatrix2 qfim_fd(const StateFamily& family, double g, double t, double step_g, double step_t,
                      const FdOptions& opts) {
  require_steps(t, step_g, step_t);
  const FisherMatrix2 f1 = fd_once(family, g, t, step_g, step_t, opts.stencil);
  const FisherMatrix2 f2 = fd_once(family, g, t, step_g / 2, step_t / 2, opts.stencil);
  const FisherMatrix2 f4 = fd_once(family, g, t, step_g / 4, step_t / 4, opts.stencil);
  const double d1 = relative_change(f1, f2);
  const double d2 = relative_change(f2, f4);
  if (d2 > opts.rel_tol) {
    if (d2 > d1)
      throw Error(ErrorKind::StepTooSmall,
                  "halving the step grew the change to " + std::to_string(d2) + " (roundoff plateau)");
    throw Error(ErrorKind::StepTooLarge, "Richardson halving still changes entries by " + std::to_string(d2));
  }
  return f4;
}

FisherMatrix2 qfim_fd(const GridModel& model, double g, double t, double step_g, double step_t,
                      const FdOptions& opts) {
  require_steps(t, step_g, step_t);
  const SplitStep stepper(model);
  const std::size_t n = stepper.steps_for(t + 2.0 * step_t);
  const StateFamily family = [&](double gg, double tt) {
    Eigen::VectorXcd psi = model.initial_state;
    stepper.evolve(psi, gg, tt, n);
    return psi;
  };
  return qfim_fd(family, g, t, step_g, step_t, opts);
}

FisherMatrix2 qfim_fd(const FockModel& model, double g, double t, double step_g, double step_t,
                      const FdOptions& opts) {
  const StateFamily family = [&](double gg, double tt) { return propagate(model, gg, tt); };
  return qfim_fd(family, g, t, step_g, step_t, opts);
}

double sym_covariance(const Eigen::VectorXcd& psi, const Eigen::VectorXcd& a_psi, const Eigen::VectorXcd& b_psi) {
  return a_psi.dot(b_psi).real() - psi.dot(a_psi).real() * psi.dot(b_psi).real();
}

FisherMatrix2 covariance_qfim(const GeneratorActions& acts) {
  return {4.0 * sym_covariance(acts.psi0, acts.hg, acts.hg), 4.0 * sym_covariance(acts.psi0, acts.hg, acts.ht),
          4.0 * sym_covariance(acts.psi0, acts.ht, acts.ht), UnitSystem::Natural};
}

GeneratorActions generator_actions(const GridModel& model, double g, double t, int n_quadrature) {
  require_quadrature(n_quadrature);
  if (!(t >= 0.0)) throw Error(ErrorKind::InvalidArgument, "t must be >= 0");
  const SplitStep stepper(model);
  const Eigen::VectorXd z = model.positions();
  GeneratorActions acts;
  acts.psi0 = model.initial_state;
  acts.ht = stepper.apply_hamiltonian(acts.psi0, g) / model.hbar;
  if (t == 0.0) {
    acts.hg = Eigen::VectorXcd::Zero(acts.psi0.size());
    return acts;
  }
  const double h = t / n_quadrature;
  const std::size_t sub = stepper.steps_for(h);

  // phi_k = U(s_k) psi0; sum_k w_k U(s_k)^dag z phi_k by backward Horner recursion.
  Eigen::VectorXcd phi = acts.psi0;
  for (int k = 0; k < n_quadrature; ++k) stepper.evolve(phi, g, h, sub);
  Eigen::VectorXcd acc = 0.5 * h * (z.array() * phi.array()).matrix();
  for (int k = n_quadrature - 1; k >= 0; --k) {
    stepper.evolve(phi, g, -h, sub);
    stepper.evolve(acc, g, -h, sub);
    const double w = (k == 0) ? 0.5 * h : h;
    acc += w * (z.array() * phi.array()).matrix();
  }
  acts.hg = (model.mass / model.hbar) * acc;
  return acts;
}

FockGenerator::FockGenerator(const FockModel& model, double g) : model_(model), g_(g) {
  const Eigen::VectorXcd psi0 = model.initial_state();
  const Eigen::MatrixXd x = model.position();
  const int d = model.fock_dim;
  blocks_.reserve(static_cast<std::size_t>(model.blocks()));
  for (int n = 0; n <= model.photon_max; ++n) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(model.block_hamiltonian(n, g));
    Block b;
    b.values = es.eigenvalues();
    b.vectors = es.eigenvectors();
    b.x_eig = model.a_coef * (b.vectors.transpose() * x * b.vectors);
    b.psi0_eig = b.vectors.transpose() * psi0.segment(static_cast<Eigen::Index>(n) * d, d);
    blocks_.push_back(std::move(b));
  }
}

Eigen::VectorXcd FockGenerator::hg_eig(const Block& b, double t, int n_quadrature) const {
  const Eigen::Index d = b.values.size();
  Eigen::MatrixXcd kernel(d, d);
  // the phase is odd-conjugate in the frequency difference
  for (Eigen::Index j = 0; j < d; ++j) {
    kernel(j, j) = b.x_eig(j, j) * trapezoid_phase(0.0, t, n_quadrature);
    for (Eigen::Index k = j + 1; k < d; ++k) {
      const cplx w = trapezoid_phase(b.values[j] - b.values[k], t, n_quadrature);
      kernel(j, k) = b.x_eig(j, k) * w;
      kernel(k, j) = b.x_eig(k, j) * std::conj(w);
    }
  }
  return kernel * b.psi0_eig;
}

GeneratorActions FockGenerator::actions(double t, int n_quadrature) const {
  require_quadrature(n_quadrature);
  const int d = model_.fock_dim;
  GeneratorActions acts;
  acts.psi0.resize(model_.dim());
  acts.hg.resize(model_.dim());
  acts.ht.resize(model_.dim());
  for (int n = 0; n <= model_.photon_max; ++n) {
    const Block& b = blocks_[static_cast<std::size_t>(n)];
    const Eigen::Index off = static_cast<Eigen::Index>(n) * d;
    acts.psi0.segment(off, d) = b.vectors.cast<cplx>() * b.psi0_eig;
    acts.hg.segment(off, d) = b.vectors.cast<cplx>() * hg_eig(b, t, n_quadrature);
    acts.ht.segment(off, d) = b.vectors.cast<cplx>() * (b.values.array() * b.psi0_eig.array()).matrix();
  }
  return acts;
}

FisherMatrix2 FockGenerator::qfim(double t, int n_quadrature) const {
  require_quadrature(n_quadrature);
  // Eigenbases are orthonormal per block, so the moments can stay there.
  const int d = model_.fock_dim;
  GeneratorActions acts;
  acts.psi0.resize(model_.dim());
  acts.hg.resize(model_.dim());
  acts.ht.resize(model_.dim());
  for (int n = 0; n <= model_.photon_max; ++n) {
    const Block& b = blocks_[static_cast<std::size_t>(n)];
    const Eigen::Index off = static_cast<Eigen::Index>(n) * d;
    acts.psi0.segment(off, d) = b.psi0_eig;
    acts.hg.segment(off, d) = hg_eig(b, t, n_quadrature);
    acts.ht.segment(off, d) = (b.values.array() * b.psi0_eig.array()).matrix();
  }
  return covariance_qfim(acts);
}

GeneratorActions generator_actions(const FockModel& model, double g, double t, int n_quadrature) {
  return FockGenerator(model, g).actions(t, n_quadrature);
}

FisherMatrix2 generator_qfim(const GridModel& model, double g, double t, int n_quadrature) {
  return converged([&](int n) { return covariance_qfim(generator_actions(model, g, t, n)); }, n_quadrature);
}

FisherMatrix2 generator_qfim(const FockModel& model, double g, double t, int n_quadrature) {
  const FockGenerator gen(model, g);
  return converged([&](int n) { return gen.qfim(t, n); }, n_quadrature);
}

namespace {

kernel::KernelParams harvest(const GeneratorActions& acts, const Eigen::VectorXcd& a_psi,
                             const Eigen::VectorXcd& b_psi, double t) {
  const Eigen::VectorXcd& psi = acts.psi0;
  kernel::KernelParams p;
  p.c0 = 4.0 * sym_covariance(psi, a_psi, a_psi);
  p.c1 = 8.0 * sym_covariance(psi, a_psi, b_psi);
  p.c2 = 4.0 * sym_covariance(psi, b_psi, b_psi);
  p.d0 = 4.0 * sym_covariance(psi, acts.hg, a_psi);
  p.d1 = 4.0 * sym_covariance(psi, acts.hg, b_psi);
  p.f_gg = 4.0 * sym_covariance(psi, acts.hg, acts.hg);
  p.t = t;
  return p;
}

}  // namespace

kernel::KernelParams harvest_kernel_params(const GridModel& model, double t, int n_quadrature) {
  generator_qfim(model, 0.0, t, n_quadrature);  // convergence gate
  const GeneratorActions acts = generator_actions(model, 0.0, t, 2 * n_quadrature);
  const SplitStep stepper(model);
  const Eigen::VectorXcd a_psi = stepper.apply_hamiltonian(acts.psi0, 0.0) / model.hbar;
  const Eigen::VectorXcd b_psi =
      (model.mass / model.hbar) * (model.positions().array() * acts.psi0.array()).matrix();
  return harvest(acts, a_psi, b_psi, t);
}

kernel::KernelParams harvest_kernel_params(const FockModel& model, double t, int n_quadrature) {
  const FockGenerator gen(model, 0.0);
  converged([&](int n) { return gen.qfim(t, n); }, n_quadrature);
  const GeneratorActions acts = gen.actions(t, 2 * n_quadrature);
  const Eigen::MatrixXd x = model.position();
  const int d = model.fock_dim;
  Eigen::VectorXcd a_psi(model.dim()), b_psi(model.dim());
  for (int n = 0; n <= model.photon_max; ++n) {
    const Eigen::Index off = static_cast<Eigen::Index>(n) * d;
    a_psi.segment(off, d) = model.block_hamiltonian(n, 0.0) * acts.psi0.segment(off, d);
    b_psi.segment(off, d) = model.a_coef * x * acts.psi0.segment(off, d);
  }
  return harvest(acts, a_psi, b_psi, t);
}

}  // namespace qgrav::oracle
