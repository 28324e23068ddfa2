#pragma once

// Small dense helpers shared by the operator-level checks.

#include <Eigen/Dense>

namespace qgrav::oracle {

/// exp(-i H t) through one Hermitian eigendecomposition (hbar folded into H).
class HermitianEvolution {
 public:
  explicit HermitianEvolution(const Eigen::MatrixXd& h);
  explicit HermitianEvolution(const Eigen::MatrixXcd& h);

  /// exp(-i H t) X
  Eigen::MatrixXcd apply(const Eigen::MatrixXcd& x, double t) const;

  const Eigen::VectorXd& eigenvalues() const noexcept { return values_; }
  const Eigen::MatrixXcd& eigenvectors() const noexcept { return vectors_; }

 private:
  Eigen::VectorXd values_;
  Eigen::MatrixXcd vectors_;
};

/// ||C - (tr C / K) I||_F / ||C||_F for a K x K matrix; 0 when C vanishes
/// (below `zero_scale` in Frobenius norm).
double off_identity_residual(const Eigen::MatrixXcd& c, double zero_scale = 0.0);

}  // namespace qgrav::oracle
