#include "qgrav/oracle/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "qgrav/errors.hpp"

namespace qgrav::oracle {

namespace {

// FFTW planning is not thread safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

bool is_power_of_two(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

fftw_complex* as_fftw(Eigen::VectorXcd& v) { return reinterpret_cast<fftw_complex*>(v.data()); }

}  // namespace

double BackgroundPotential::operator()(double z, double mass) const noexcept {
  switch (kind) {
    case Kind::Free:
      return 0.0;
    case Kind::Harmonic:
      return 0.5 * mass * strength * strength * z * z;
    case Kind::Quartic:
      return strength * z * z * z * z;
  }
  return 0.0;
}

double GridModel::k(std::size_t j) const noexcept {
  const double dk = 2.0 * std::numbers::pi / box_length;
  const auto n = static_cast<long>(n_points);
  const auto jj = static_cast<long>(j);
  return dk * static_cast<double>(jj < n / 2 ? jj : jj - n);
}

double GridModel::k_max() const noexcept { return std::numbers::pi / dx(); }

Eigen::VectorXd GridModel::positions() const {
  Eigen::VectorXd z(static_cast<Eigen::Index>(n_points));
  for (std::size_t j = 0; j < n_points; ++j) z[static_cast<Eigen::Index>(j)] = this->z(j);
  return z;
}

void GridModel::validate() const {
  if (!is_power_of_two(n_points))
    throw Error(ErrorKind::InvalidArgument, "n_points must be a power of two (got " + std::to_string(n_points) + ")");
  if (!(box_length > 0.0) || !(mass > 0.0) || !(hbar > 0.0) || !(dt > 0.0))
    throw Error(ErrorKind::InvalidArgument, "box_length, mass, hbar and dt must be > 0");
  if (static_cast<std::size_t>(initial_state.size()) != n_points)
    throw Error(ErrorKind::InvalidArgument, "initial_state size does not match n_points");
  const double norm = initial_state.squaredNorm();
  if (std::abs(norm - 1.0) > 1e-12)
    throw Error(ErrorKind::InvalidArgument, "initial_state is not unit norm (|psi|^2 = " + std::to_string(norm) + ")");

  Eigen::VectorXcd spec = initial_state;
  Fft(n_points).forward(spec);
  const double total = spec.squaredNorm();
  double tail = 0.0;
  const double edge = 0.875 * k_max();
  for (std::size_t j = 0; j < n_points; ++j)
    if (std::abs(k(j)) > edge) tail += std::norm(spec[static_cast<Eigen::Index>(j)]);
  if (tail / total > 1e-10)
    throw Error(ErrorKind::GridUnderResolved,
                "momentum weight near Nyquist is " + std::to_string(tail / total) + " (> 1e-10)");
  // Position-space edges: the periodic box must not see the packet.
  const auto n = static_cast<Eigen::Index>(n_points);
  const Eigen::Index band = std::max<Eigen::Index>(1, n / 32);
  const double edge_weight =
      initial_state.head(band).squaredNorm() + initial_state.tail(band).squaredNorm();
  if (edge_weight > 1e-10)
    throw Error(ErrorKind::GridUnderResolved,
                "position weight near the box edge is " + std::to_string(edge_weight));
}

Eigen::VectorXcd gaussian_state(const GridModel& model, double sigma, double center, double momentum) {
  if (!(sigma > 0.0)) throw Error(ErrorKind::InvalidArgument, "sigma must be > 0");
  const auto n = static_cast<Eigen::Index>(model.n_points);
  Eigen::VectorXcd psi(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double z = model.z(static_cast<std::size_t>(j)) - center;
    psi[j] = std::exp(cplx(-0.5 * z * z / (sigma * sigma), momentum * z / model.hbar));
  }
  psi /= psi.norm();
  return psi;
}

double auto_box_length(const freefall::GaussianProbe& probe, double g, double t) {
  const double spread = std::sqrt(probe.var_z() + probe.var_p() * t * t / (probe.mass() * probe.mass()));
  return 2.0 * (0.5 * std::abs(g) * t * t + 10.0 * spread);
}

GridModel make_freefall_model(const freefall::GaussianProbe& probe, double g_max, double t_max,
                              std::size_t n_points, double dt) {
  GridModel m;
  m.mass = probe.mass();
  m.hbar = probe.hbar();
  m.dt = dt;
  m.box_length = auto_box_length(probe, g_max, t_max);
  if (n_points == 0) {
    // wave numbers reached: kick m g t / hbar plus ten momentum widths
    const double k_need =
        probe.mass() * std::abs(g_max) * t_max / probe.hbar() + 10.0 * std::sqrt(probe.var_p()) / probe.hbar();
    const double n_min = k_need * m.box_length / std::numbers::pi / 0.8;
    n_points = 64;
    while (static_cast<double>(n_points) < n_min) n_points *= 2;
  }
  m.n_points = n_points;
  m.initial_state = gaussian_state(m, probe.sigma());
  return m;
}

Fft::Fft(std::size_t n) : n_(n) {
  Eigen::VectorXcd scratch(static_cast<Eigen::Index>(n));
  std::lock_guard lock(planner_mutex());
  const int ni = static_cast<int>(n);
  forward_plan_ = fftw_plan_dft_1d(ni, as_fftw(scratch), as_fftw(scratch), FFTW_FORWARD,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
  inverse_plan_ = fftw_plan_dft_1d(ni, as_fftw(scratch), as_fftw(scratch), FFTW_BACKWARD,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
}

Fft::~Fft() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
}

void Fft::forward(Eigen::VectorXcd& v) const {
  fftw_execute_dft(static_cast<fftw_plan>(forward_plan_), as_fftw(v), as_fftw(v));
}

void Fft::inverse(Eigen::VectorXcd& v) const {
  fftw_execute_dft(static_cast<fftw_plan>(inverse_plan_), as_fftw(v), as_fftw(v));
  v /= static_cast<double>(n_);
}

SplitStep::SplitStep(const GridModel& model) : model_(model), fft_(std::make_shared<Fft>(model.n_points)) {
  const auto n = static_cast<Eigen::Index>(model.n_points);
  kinetic_.resize(n);
  momentum_.resize(n);
  position_ = model.positions();
  background_.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double k = model.k(static_cast<std::size_t>(j));
    kinetic_[j] = model.hbar * k * k / (2.0 * model.mass);
    momentum_[j] = (j == n / 2) ? 0.0 : model.hbar * k;
    background_[j] = model.background(position_[j], model.mass) / model.hbar;
  }
}

std::size_t SplitStep::steps_for(double duration) const noexcept {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::abs(duration) / model_.dt - 1e-9)));
}

void SplitStep::apply_kinetic(Eigen::VectorXcd& psi, double tau) const {
  fft_->forward(psi);
  for (Eigen::Index j = 0; j < psi.size(); ++j) psi[j] *= std::polar(1.0, -kinetic_[j] * tau);
  fft_->inverse(psi);
}

void SplitStep::evolve(Eigen::VectorXcd& psi, double g, double duration, std::size_t n_steps) const {
  if (duration == 0.0) return;
  const double h = duration / static_cast<double>(n_steps);
  const double gm = model_.mass * g / model_.hbar;
  Eigen::VectorXcd half(psi.size());
  for (Eigen::Index j = 0; j < psi.size(); ++j)
    half[j] = std::polar(1.0, -0.5 * h * (background_[j] + gm * position_[j]));
  for (std::size_t s = 0; s < n_steps; ++s) {
    psi.array() *= half.array();
    apply_kinetic(psi, h);
    psi.array() *= half.array();
  }
}

Eigen::VectorXcd SplitStep::apply_hamiltonian(const Eigen::VectorXcd& psi, double g) const {
  Eigen::VectorXcd t = psi;
  fft_->forward(t);
  t.array() *= kinetic_.array();
  fft_->inverse(t);
  t *= model_.hbar;
  const double gm = model_.mass * g;
  for (Eigen::Index j = 0; j < psi.size(); ++j)
    t[j] += (model_.hbar * background_[j] + gm * position_[j]) * psi[j];
  return t;
}

Eigen::VectorXcd SplitStep::apply_momentum(const Eigen::VectorXcd& psi) const {
  Eigen::VectorXcd t = psi;
  fft_->forward(t);
  t.array() *= momentum_.array();
  fft_->inverse(t);
  return t;
}

double fidelity(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  return std::norm(a.dot(b)) / (a.squaredNorm() * b.squaredNorm());
}

Eigen::VectorXcd propagate(const GridModel& model, double g, double t, bool check_convergence) {
  if (!(t >= 0.0)) throw Error(ErrorKind::InvalidArgument, "t must be >= 0");
  const SplitStep stepper(model);
  Eigen::VectorXcd psi = model.initial_state;
  const std::size_t n = stepper.steps_for(t);
  stepper.evolve(psi, g, t, n);
  if (check_convergence) {
    Eigen::VectorXcd fine = model.initial_state;
    stepper.evolve(fine, g, t, 2 * n);
    const double loss = 1.0 - fidelity(psi, fine);
    if (loss > 1e-10)
      throw Error(ErrorKind::ConvergenceFailure,
                  "halving dt changed the final-state fidelity by " + std::to_string(loss));
  }
  return psi;
}

DenseGridOperators dense_operators(const GridModel& model) {
  const auto n = static_cast<Eigen::Index>(model.n_points);
  if (n > 512) throw Error(ErrorKind::InvalidArgument, "dense operators are limited to n_points <= 512");
  const Fft fft(model.n_points);
  // Circulant first columns: inverse transforms of the spectral multipliers.
  Eigen::VectorXcd kin(n), mom(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double k = model.k(static_cast<std::size_t>(j));
    kin[j] = model.hbar * model.hbar * k * k / (2.0 * model.mass);
    mom[j] = (j == n / 2) ? 0.0 : model.hbar * k;
  }
  fft.inverse(kin);
  fft.inverse(mom);

  DenseGridOperators ops;
  ops.kinetic.resize(n, n);
  ops.momentum.resize(n, n);
  for (Eigen::Index l = 0; l < n; ++l)
    for (Eigen::Index j = 0; j < n; ++j) {
      const Eigen::Index d = (j - l + n) % n;
      ops.kinetic(j, l) = kin[d].real();
      ops.momentum(j, l) = mom[d];
    }
  ops.position = model.positions();
  ops.background.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) ops.background[j] = model.background(ops.position[j], model.mass);
  return ops;
}

}  // namespace qgrav::oracle
