#include "qgrav/oracle/fock.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "qgrav/errors.hpp"
#include "qgrav/oracle/linalg.hpp"

namespace qgrav::oracle {

namespace {

using cplx = std::complex<double>;

// P(N >= k) for N ~ Poisson(lambda), summed directly from k upwards.
double poisson_tail(double lambda, int k) {
  if (lambda <= 0.0) return k <= 0 ? 1.0 : 0.0;
  double tail = 0.0;
  double log_term = -lambda + k * std::log(lambda) - std::lgamma(k + 1.0);
  for (int j = k; j < k + 4000; ++j) {
    const double term = std::exp(log_term);
    tail += term;
    if (j > lambda && term < 1e-18 * std::max(tail, 1e-300)) break;
    log_term += std::log(lambda) - std::log(j + 1.0);
  }
  return std::min(tail, 1.0);
}

// Largest mean mechanical occupation reached along the orbit of block n.
double max_occupation(const FockModel& m, int n, double g) {
  const double centre = m.kbar * n - m.a_coef * g;
  const double radius = std::hypot(m.beta_r - centre, m.beta_i);
  const double r = std::abs(centre) + radius;
  return 0.5 * r * r;
}

double worst_mechanical_tail(const FockModel& m, double g_max) {
  double worst = 0.0;
  for (int n = 0; n <= m.photon_max; ++n)
    for (const double g : {-g_max, g_max})
      worst = std::max(worst, poisson_tail(max_occupation(m, n, g), m.fock_dim));
  return worst;
}

}  // namespace

void FockModel::validate(double g_max) const {
  if (!(kbar >= 0.0) || !(mu >= 0.0) || !(a_coef > 0.0))
    throw Error(ErrorKind::InvalidArgument, "FockModel needs kbar >= 0, mu >= 0, a_coef > 0");
  if (!std::isfinite(beta_r) || !std::isfinite(beta_i) || !std::isfinite(delta))
    throw Error(ErrorKind::InvalidArgument, "FockModel amplitudes and detuning must be finite");
  if (fock_dim < 2 || photon_max < 0)
    throw Error(ErrorKind::InvalidArgument, "FockModel needs fock_dim >= 2 and photon_max >= 0");
  const double optical = poisson_tail(mu, photon_max + 1);
  if (optical > 1e-8)
    throw Error(ErrorKind::TruncationTooSmall,
                "photon tail beyond photon_max = " + std::to_string(photon_max) + " is " + std::to_string(optical));
  const double mech = worst_mechanical_tail(*this, std::abs(g_max));
  if (mech > 1e-8)
    throw Error(ErrorKind::TruncationTooSmall,
                "mechanical tail beyond fock_dim = " + std::to_string(fock_dim) + " is " + std::to_string(mech));
}

FockModel FockModel::with_auto_truncation(FockModel base, double g_max) {
  base.photon_max = 0;
  while (poisson_tail(base.mu, base.photon_max + 1) > 1e-13) ++base.photon_max;
  base.fock_dim = 8;
  while (worst_mechanical_tail(base, std::abs(g_max)) > 1e-13) base.fock_dim += 2;
  base.fock_dim += 4;
  return base;
}

std::vector<double> FockModel::photon_weights() const {
  std::vector<double> p(static_cast<std::size_t>(blocks()));
  double log_term = -mu;
  double total = 0.0;
  for (int n = 0; n <= photon_max; ++n) {
    p[static_cast<std::size_t>(n)] = (mu == 0.0) ? (n == 0 ? 1.0 : 0.0) : std::exp(log_term);
    total += p[static_cast<std::size_t>(n)];
    if (mu > 0.0) log_term += std::log(mu) - std::log(n + 1.0);
  }
  for (auto& w : p) w /= total;
  return p;
}

Eigen::VectorXcd FockModel::mechanical_state() const {
  const cplx beta(beta_r / std::sqrt(2.0), beta_i / std::sqrt(2.0));
  Eigen::VectorXcd v(fock_dim);
  cplx c = std::exp(-0.5 * std::norm(beta));
  for (int j = 0; j < fock_dim; ++j) {
    v[j] = c;
    c *= beta / std::sqrt(j + 1.0);
  }
  v /= v.norm();
  return v;
}

Eigen::VectorXcd FockModel::initial_state() const {
  const auto p = photon_weights();
  const Eigen::VectorXcd mech = mechanical_state();
  Eigen::VectorXcd psi(dim());
  for (int n = 0; n <= photon_max; ++n)
    psi.segment(static_cast<Eigen::Index>(n) * fock_dim, fock_dim) = std::sqrt(p[static_cast<std::size_t>(n)]) * mech;
  return psi;
}

Eigen::MatrixXd FockModel::position() const {
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(fock_dim, fock_dim);
  for (int j = 0; j + 1 < fock_dim; ++j) x(j, j + 1) = x(j + 1, j) = std::sqrt((j + 1) / 2.0);
  return x;
}

Eigen::MatrixXd FockModel::block_hamiltonian(int n, double g) const {
  Eigen::MatrixXd h = (-kbar * n + a_coef * g) * position();
  for (int j = 0; j < fock_dim; ++j) h(j, j) += -delta * n + j;
  return h;
}

Eigen::VectorXcd propagate(const FockModel& model, double g, double t) {
  const Eigen::VectorXcd psi0 = model.initial_state();
  Eigen::VectorXcd psi(psi0.size());
  const int d = model.fock_dim;
  for (int n = 0; n <= model.photon_max; ++n) {
    const HermitianEvolution u(model.block_hamiltonian(n, g));
    const Eigen::Index off = static_cast<Eigen::Index>(n) * d;
    psi.segment(off, d) = u.apply(psi0.segment(off, d), t);
  }
  return psi;
}

Eigen::VectorXcd propagate_full_space(const FockModel& model, double g, double t) {
  const int p = model.blocks();
  const int d = model.fock_dim;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(p, p);
  for (int n = 1; n < p; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(d, d);
  for (int j = 1; j < d; ++j) b(j - 1, j) = std::sqrt(static_cast<double>(j));
  const Eigen::MatrixXd na = a.transpose() * a;
  const Eigen::MatrixXd nb = b.transpose() * b;
  const Eigen::MatrixXd x = (b + b.transpose()) / std::sqrt(2.0);
  const Eigen::MatrixXd id_a = Eigen::MatrixXd::Identity(p, p);
  const Eigen::MatrixXd id_b = Eigen::MatrixXd::Identity(d, d);

  const Eigen::MatrixXd h = -model.delta * Eigen::kroneckerProduct(na, id_b).eval() +
                            Eigen::kroneckerProduct(id_a, nb).eval() -
                            model.kbar * Eigen::kroneckerProduct(na, x).eval() +
                            model.a_coef * g * Eigen::kroneckerProduct(id_a, x).eval();
  const Eigen::MatrixXcd generator = cplx(0.0, -t) * h.cast<cplx>();
  const Eigen::MatrixXcd u = generator.exp();
  return u * model.initial_state();
}

double photon_statistics_drift(const FockModel& model, const Eigen::VectorXcd& psi) {
  const Eigen::VectorXcd psi0 = model.initial_state();
  const int d = model.fock_dim;
  double mean0 = 0.0, mean1 = 0.0, sq0 = 0.0, sq1 = 0.0, worst = 0.0;
  for (int n = 0; n <= model.photon_max; ++n) {
    const Eigen::Index off = static_cast<Eigen::Index>(n) * d;
    const double w0 = psi0.segment(off, d).squaredNorm();
    const double w1 = psi.segment(off, d).squaredNorm();
    worst = std::max(worst, std::abs(w1 - w0));
    mean0 += n * w0;
    mean1 += n * w1;
    sq0 += n * n * w0;
    sq1 += n * n * w1;
  }
  const double var0 = sq0 - mean0 * mean0;
  const double var1 = sq1 - mean1 * mean1;
  return std::max({worst, std::abs(mean1 - mean0), std::abs(var1 - var0)});
}

}  // namespace qgrav::oracle
