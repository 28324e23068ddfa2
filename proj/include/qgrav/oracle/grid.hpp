#pragma once

// Position-grid discretization of one-dimensional motion under
// H(g) = p^2/2m + V0(z) + m g z, with symmetric split-step spectral stepping.

#include <complex>
#include <cstddef>
#include <memory>

#include <Eigen/Dense>

#include "qgrav/freefall.hpp"

namespace qgrav::oracle {

using cplx = std::complex<double>;

/// g-independent background potential V0(z).
struct BackgroundPotential {
  enum class Kind { Free, Harmonic, Quartic };
  Kind kind = Kind::Free;
  double strength = 0.0;  // omega for Harmonic, lambda for Quartic (V0 = lambda z^4)

  static BackgroundPotential free() { return {}; }
  static BackgroundPotential harmonic(double omega) { return {Kind::Harmonic, omega}; }
  static BackgroundPotential quartic(double lambda) { return {Kind::Quartic, lambda}; }

  double operator()(double z, double mass) const noexcept;
};

struct GridModel {
  std::size_t n_points = 1024;  // power of two
  double box_length = 40.0;
  double mass = 1.0;
  double hbar = 1.0;
  BackgroundPotential background;
  double dt = 0.01;
  Eigen::VectorXcd initial_state;

  double dx() const noexcept { return box_length / static_cast<double>(n_points); }
  double z(std::size_t j) const noexcept { return -0.5 * box_length + static_cast<double>(j) * dx(); }
  /// Angular wave number in FFT ordering.
  double k(std::size_t j) const noexcept;
  double k_max() const noexcept;

  Eigen::VectorXd positions() const;

  /// Throws InvalidArgument / GridUnderResolved when an invariant fails:
  /// power-of-two size, unit norm (1e-12), and momentum tail near Nyquist < 1e-10.
  void validate() const;
};

/// Discrete L2 inner product (sum over grid with dx weight is folded into
/// the normalization of the stored amplitudes: sum |psi_j|^2 = 1).
Eigen::VectorXcd gaussian_state(const GridModel& model, double sigma, double center = 0.0,
                                double momentum = 0.0);

/// Box length keeping the packet >= 8 widths from the edges over [0, t].
double auto_box_length(const freefall::GaussianProbe& probe, double g, double t);

/// Gaussian free-fall model with the box sized for (g, t) and the grid
/// spacing set from the momentum content.
GridModel make_freefall_model(const freefall::GaussianProbe& probe, double g_max, double t_max,
                              std::size_t n_points = 0, double dt = 0.01);

/// Thin RAII wrapper over FFTW complex transforms on unaligned Eigen storage.
class Fft {
 public:
  explicit Fft(std::size_t n);
  ~Fft();
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  void forward(Eigen::VectorXcd& v) const;
  /// Unnormalized inverse followed by 1/n scaling.
  void inverse(Eigen::VectorXcd& v) const;

 private:
  std::size_t n_;
  void* forward_plan_;
  void* inverse_plan_;
};

class SplitStep {
 public:
  explicit SplitStep(const GridModel& model);

  /// Strang steps of potential/2, kinetic, potential/2 over `duration`.
  void evolve(Eigen::VectorXcd& psi, double g, double duration, std::size_t n_steps) const;

  /// exp(-i p^2 tau / (2 m hbar)) applied spectrally.
  void apply_kinetic(Eigen::VectorXcd& psi, double tau) const;

  /// H(g) psi, kinetic part spectrally.
  Eigen::VectorXcd apply_hamiltonian(const Eigen::VectorXcd& psi, double g) const;

  /// p psi, spectrally (Nyquist mode zeroed).
  Eigen::VectorXcd apply_momentum(const Eigen::VectorXcd& psi) const;

  const GridModel& model() const noexcept { return model_; }
  std::size_t steps_for(double duration) const noexcept;

 private:
  GridModel model_;
  std::shared_ptr<Fft> fft_;
  Eigen::VectorXd kinetic_;  // hbar k^2 / 2m (divided by hbar: energy/hbar)
  Eigen::VectorXd momentum_;
  Eigen::VectorXd position_;
  Eigen::VectorXd background_;  // V0 / hbar
};

/// U(g, t) |psi0>. With check_convergence, also runs at dt/2 and throws
/// ConvergenceFailure if the fidelity changes by more than 1e-10.
Eigen::VectorXcd propagate(const GridModel& model, double g, double t,
                           bool check_convergence = false);

double fidelity(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);

/// Dense operator matrices on the grid (only sensible for n_points <= 512).
struct DenseGridOperators {
  Eigen::MatrixXd kinetic;    // p^2/2m, real symmetric
  Eigen::MatrixXcd momentum;  // p, Hermitian, Nyquist zeroed
  Eigen::VectorXd position;
  Eigen::VectorXd background;
};

DenseGridOperators dense_operators(const GridModel& model);

}  // namespace qgrav::oracle
