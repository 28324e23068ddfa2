#include "qgrav/oracle/identities.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "qgrav/errors.hpp"

namespace qgrav::oracle {

namespace {

using cplx = std::complex<double>;

Eigen::MatrixXcd orthonormal_columns(const Eigen::MatrixXcd& a) {
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(a.rows(), a.cols());
}

}  // namespace

const HermitianEvolution& OperatorModel::evolution(double g) const {
  std::lock_guard lock(cache_mutex_);
  auto it = cache_.find(g);
  if (it == cache_.end()) it = cache_.emplace(g, std::make_unique<HermitianEvolution>(hamiltonian(g))).first;
  return *it->second;
}

Eigen::MatrixXcd OperatorModel::heisenberg_position(const Eigen::MatrixXcd& x, double g, double s) const {
  const HermitianEvolution& u = evolution(g);
  return u.apply(apply_position(u.apply(x, s)), -s);
}

GridOperatorModel::GridOperatorModel(const GridModel& model, int interior_dim)
    : model_(model), ops_(dense_operators(model)) {
  const Eigen::VectorXcd& psi = model.initial_state;
  const Eigen::VectorXd z = ops_.position;
  const double mean = (psi.cwiseAbs2().array() * z.array()).sum();
  const double var = (psi.cwiseAbs2().array() * (z.array() - mean).square()).sum();
  const double width = std::sqrt(2.0 * var);
  const Eigen::Index n = z.size();
  Eigen::MatrixXcd h(n, interior_dim);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double y = (z[j] - mean) / width;
    double prev = 0.0;
    double cur = std::exp(-0.5 * y * y);
    for (int k = 0; k < interior_dim; ++k) {
      h(j, k) = cur;
      const double next = std::sqrt(2.0 / (k + 1)) * y * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
      prev = cur;
      cur = next;
    }
  }
  interior_ = orthonormal_columns(h);
}

Eigen::MatrixXd GridOperatorModel::hamiltonian(double g) const {
  Eigen::MatrixXd h = ops_.kinetic;
  h.diagonal() += ops_.background + model_.mass * g * ops_.position;
  return h / model_.hbar;
}

Eigen::MatrixXcd GridOperatorModel::apply_position(const Eigen::MatrixXcd& x) const {
  return ops_.position.asDiagonal() * x;
}

FockOperatorModel::FockOperatorModel(const FockModel& model, int interior_dim, int interior_blocks)
    : model_(model), position_(model.position()) {
  const int blocks = std::min(interior_blocks, model.blocks());
  if (interior_dim > model.fock_dim)
    throw Error(ErrorKind::InvalidArgument, "interior_dim exceeds fock_dim");
  interior_ = Eigen::MatrixXcd::Zero(model.dim(), static_cast<Eigen::Index>(blocks) * interior_dim);
  for (int n = 0; n < blocks; ++n)
    for (int j = 0; j < interior_dim; ++j)
      interior_(static_cast<Eigen::Index>(n) * model.fock_dim + j, static_cast<Eigen::Index>(n) * interior_dim + j) = 1.0;
}

Eigen::MatrixXd FockOperatorModel::hamiltonian(double g) const {
  const int d = model_.fock_dim;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(model_.dim(), model_.dim());
  for (int n = 0; n <= model_.photon_max; ++n) {
    const Eigen::Index off = static_cast<Eigen::Index>(n) * d;
    h.block(off, off, d, d) = model_.block_hamiltonian(n, g);
  }
  return h;
}

Eigen::MatrixXcd FockOperatorModel::apply_position(const Eigen::MatrixXcd& x) const {
  const int d = model_.fock_dim;
  Eigen::MatrixXcd y(x.rows(), x.cols());
  for (int n = 0; n <= model_.photon_max; ++n) {
    const Eigen::Index off = static_cast<Eigen::Index>(n) * d;
    y.middleRows(off, d) = position_ * x.middleRows(off, d);
  }
  return y;
}

ScalarityReport commutator_scalarity(const OperatorModel& model, double u, double v) {
  const Eigen::MatrixXcd& q = model.interior_basis();
  ScalarityReport r;
  if (u == v) return r;
  const Eigen::MatrixXcd zu_zv = model.heisenberg_position(model.heisenberg_position(q, 0.0, v), 0.0, u);
  const Eigen::MatrixXcd zv_zu = model.heisenberg_position(model.heisenberg_position(q, 0.0, u), 0.0, v);
  const Eigen::MatrixXcd c = q.adjoint() * (zu_zv - zv_zu);
  r.residual = off_identity_residual(c, 1e-14 * static_cast<double>(q.cols()));
  r.scalar = c.trace() / static_cast<double>(c.rows());
  return r;
}

AffineShiftReport affine_shift_check(const OperatorModel& model, double g, double s) {
  const Eigen::MatrixXcd& q = model.interior_basis();
  AffineShiftReport r;
  if (g == 0.0) return r;
  const Eigen::MatrixXcd d = q.adjoint() * (model.heisenberg_position(q, g, s) - model.heisenberg_position(q, 0.0, s));
  r.residual = off_identity_residual(d, 1e-14 * static_cast<double>(q.cols()));
  r.f = (d.trace() / static_cast<double>(d.rows())).real() / g;
  return r;
}

double bch_factorization_check(const GridModel& model, double g, double t, double phase_coefficient) {
  if (model.background.kind != BackgroundPotential::Kind::Free)
    throw Error(ErrorKind::InvalidArgument, "the factorization check needs the free-fall Hamiltonian");
  const DenseGridOperators ops = dense_operators(model);
  const double m = model.mass;
  const double hbar = model.hbar;
  const Eigen::VectorXcd& psi0 = model.initial_state;

  const auto exact = [&](double gg) {
    Eigen::MatrixXd h = ops.kinetic;
    h.diagonal() += m * gg * ops.position;
    return Eigen::VectorXcd(HermitianEvolution(Eigen::MatrixXd(h / hbar)).apply(psi0, t));
  };
  const HermitianEvolution kinetic(Eigen::MatrixXd(ops.kinetic / hbar));
  const auto factored = [&](double gg) {
    Eigen::MatrixXcd g0 = (t / hbar) * (0.5 * t) * ops.momentum;
    g0.diagonal() += (t / hbar) * m * ops.position.cast<cplx>();
    const Eigen::MatrixXcd shifted = HermitianEvolution(g0).apply(psi0, gg);
    const cplx phase = std::polar(1.0, phase_coefficient * m * gg * gg * t * t * t / hbar);
    return Eigen::VectorXcd(phase * kinetic.apply(shifted, t));
  };

  const cplx overlap = 0.5 * (factored(g).dot(exact(g)) + factored(0.0).dot(exact(0.0)));
  return 1.0 - std::abs(overlap);
}

}  // namespace qgrav::oracle
