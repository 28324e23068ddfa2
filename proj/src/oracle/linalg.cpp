#include "qgrav/oracle/linalg.hpp"

#include <complex>

namespace qgrav::oracle {

HermitianEvolution::HermitianEvolution(const Eigen::MatrixXd& h) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  values_ = es.eigenvalues();
  vectors_ = es.eigenvectors().cast<std::complex<double>>();
}

HermitianEvolution::HermitianEvolution(const Eigen::MatrixXcd& h) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  values_ = es.eigenvalues();
  vectors_ = es.eigenvectors();
}

Eigen::MatrixXcd HermitianEvolution::apply(const Eigen::MatrixXcd& x, double t) const {
  Eigen::MatrixXcd y = vectors_.adjoint() * x;
  for (Eigen::Index i = 0; i < y.rows(); ++i) y.row(i) *= std::polar(1.0, -values_[i] * t);
  return vectors_ * y;
}

double off_identity_residual(const Eigen::MatrixXcd& c, double zero_scale) {
  const double norm = c.norm();
  if (norm <= zero_scale || norm == 0.0) return 0.0;
  const auto k = static_cast<double>(c.rows());
  Eigen::MatrixXcd d = c;
  d.diagonal().array() -= c.trace() / k;
  return d.norm() / norm;
}

}  // namespace qgrav::oracle
