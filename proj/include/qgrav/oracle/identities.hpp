#pragma once

// Operator-level checks of the weak commutator condition, the affine gravity
// shift of the Heisenberg position, and the factored free-fall propagator.
// Matrices are dense; residuals are measured on a low-lying interior
// subspace so box and truncation edges do not enter.

#include <map>
#include <memory>
#include <mutex>

#include <Eigen/Dense>

#include "qgrav/oracle/fock.hpp"
#include "qgrav/oracle/grid.hpp"
#include "qgrav/oracle/linalg.hpp"

namespace qgrav::oracle {

class OperatorModel {
 public:
  virtual ~OperatorModel() = default;

  /// Orthonormal columns spanning the interior subspace.
  virtual const Eigen::MatrixXcd& interior_basis() const = 0;

  /// z_H(s; g) X = U(g, s)^dag z U(g, s) X.
  Eigen::MatrixXcd heisenberg_position(const Eigen::MatrixXcd& x, double g, double s) const;

 protected:
  virtual Eigen::MatrixXd hamiltonian(double g) const = 0;  // H(g) / hbar
  virtual Eigen::MatrixXcd apply_position(const Eigen::MatrixXcd& x) const = 0;

 private:
  const HermitianEvolution& evolution(double g) const;

  mutable std::mutex cache_mutex_;
  mutable std::map<double, std::unique_ptr<HermitianEvolution>> cache_;
};

/// Dense grid operators (n_points <= 512). Interior: the lowest
/// `interior_dim` harmonic-oscillator eigenfunctions whose ground state
/// matches the model's initial width.
class GridOperatorModel final : public OperatorModel {
 public:
  explicit GridOperatorModel(const GridModel& model, int interior_dim = 8);
  const Eigen::MatrixXcd& interior_basis() const override { return interior_; }

 protected:
  Eigen::MatrixXd hamiltonian(double g) const override;
  Eigen::MatrixXcd apply_position(const Eigen::MatrixXcd& x) const override;

 private:
  GridModel model_;
  DenseGridOperators ops_;
  Eigen::MatrixXcd interior_;
};

/// Full block-diagonal Fock matrices. Interior: the lowest `interior_dim`
/// mechanical levels of the first `interior_blocks` photon blocks.
class FockOperatorModel final : public OperatorModel {
 public:
  explicit FockOperatorModel(const FockModel& model, int interior_dim = 6, int interior_blocks = 3);
  const Eigen::MatrixXcd& interior_basis() const override { return interior_; }

 protected:
  Eigen::MatrixXd hamiltonian(double g) const override;
  Eigen::MatrixXcd apply_position(const Eigen::MatrixXcd& x) const override;

 private:
  FockModel model_;
  Eigen::MatrixXd position_;
  Eigen::MatrixXcd interior_;
};

struct ScalarityReport {
  double residual = 0.0;
  std::complex<double> scalar;  // tr C / K
};

/// C = [z0(u), z0(v)] projected on the interior; residual as in
/// off_identity_residual (0 when C vanishes).
ScalarityReport commutator_scalarity(const OperatorModel& model, double u, double v);

struct AffineShiftReport {
  double residual = 0.0;
  double f = 0.0;  // tr D / (g K); 0 when g = 0
};

/// D = z_H(s; g) - z0(s) projected on the interior.
AffineShiftReport affine_shift_check(const OperatorModel& model, double g, double s);

/// 1 - |(<r_a|e_a> + <r_b|e_b>)/2| for the two-branch superposition of the
/// g branch and a g = 0 reference, with r the factored right side
///   exp(-i t p^2/(2 m hbar)) exp(-i g G0(t)) exp(i c m g^2 t^3 / hbar),
///   G0(t) = (t/hbar)(m z + (t/2) p),
/// and e the exact evolution. The exact identity has c = 1/12.
double bch_factorization_check(const GridModel& model, double g, double t,
                               double phase_coefficient = 1.0 / 12.0);

}  // namespace qgrav::oracle
