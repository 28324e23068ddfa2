#pragma once

// Two independent numerical QFIM routes for pure unitary families:
//   finite-difference state derivatives with the overlap formula, and
//   4 x symmetrized covariances of the local generators in |psi0>, with the
//   gravity generator built by trapezoidal quadrature of z_H(s).

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "qgrav/core.hpp"
#include "qgrav/kernel.hpp"
#include "qgrav/oracle/fock.hpp"
#include "qgrav/oracle/grid.hpp"

namespace qgrav::oracle {

using StateFamily = std::function<Eigen::VectorXcd(double g, double t)>;

enum class Stencil { Central2, Central4 };

struct FdOptions {
  Stencil stencil = Stencil::Central4;
  double rel_tol = 1e-6;
};

/// 4 Re[<d_i psi|d_j psi> - <d_i psi|psi><psi|d_j psi>].
FisherMatrix2 qfim_from_derivatives(const Eigen::VectorXcd& psi, const Eigen::VectorXcd& d_g,
                                    const Eigen::VectorXcd& d_t);

/// Evaluates the stencil at steps h, h/2 and h/4. Throws StepTooLarge when
/// the last halving still moves an entry by more than rel_tol, StepTooSmall
/// when it moves more than the previous halving did (roundoff plateau).
/// Returns the h/4 result.
FisherMatrix2 qfim_fd(const StateFamily& family, double g, double t, double step_g, double step_t,
                      const FdOptions& opts = {});

/// Split-step family with the step count frozen for the whole stencil.
FisherMatrix2 qfim_fd(const GridModel& model, double g, double t, double step_g, double step_t,
                      const FdOptions& opts = {});

FisherMatrix2 qfim_fd(const FockModel& model, double g, double t, double step_g, double step_t,
                      const FdOptions& opts = {});

/// |psi0>, H_g |psi0> and H_t |psi0> in one common basis.
struct GeneratorActions {
  Eigen::VectorXcd psi0;
  Eigen::VectorXcd hg;
  Eigen::VectorXcd ht;
};

/// Real part of the symmetrized covariance <(A B + B A)/2> - <A><B>.
double sym_covariance(const Eigen::VectorXcd& psi, const Eigen::VectorXcd& a_psi,
                      const Eigen::VectorXcd& b_psi);

FisherMatrix2 covariance_qfim(const GeneratorActions& acts);

GeneratorActions generator_actions(const GridModel& model, double g, double t, int n_quadrature);

/// Per-block eigen-decomposition of H(g) reused across many times t.
class FockGenerator {
 public:
  FockGenerator(const FockModel& model, double g);

  GeneratorActions actions(double t, int n_quadrature) const;
  FisherMatrix2 qfim(double t, int n_quadrature) const;

 private:
  struct Block {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
    Eigen::MatrixXd x_eig;       // a_coef * x in the eigenbasis
    Eigen::VectorXcd psi0_eig;
  };
  // H_g psi0 in the eigenbasis of block b.
  Eigen::VectorXcd hg_eig(const Block& b, double t, int n_quadrature) const;

  FockModel model_;
  double g_;
  std::vector<Block> blocks_;
};

GeneratorActions generator_actions(const FockModel& model, double g, double t, int n_quadrature);

/// Covariance route; repeats at 2 n_quadrature and throws
/// QuadratureNotConverged if any entry moves by more than 1e-6 relative.
/// Requires n_quadrature >= 16.
FisherMatrix2 generator_qfim(const GridModel& model, double g, double t, int n_quadrature);
FisherMatrix2 generator_qfim(const FockModel& model, double g, double t, int n_quadrature);

/// Kernel coefficients from moments at g = 0:
///   c0 = 4 Var(A), c1 = 8 Cov(A, B), c2 = 4 Var(B), f_gg = 4 Var(H_g),
///   d0 = 4 Cov(H_g, A), d1 = 4 Cov(H_g, B),
/// with A = H(0)/hbar and B the gravity coupling operator / hbar.
kernel::KernelParams harvest_kernel_params(const GridModel& model, double t, int n_quadrature);
kernel::KernelParams harvest_kernel_params(const FockModel& model, double t, int n_quadrature);

/// Largest |dF_ij| / sqrt(F_ii F_jj) between two matrices.
double relative_change(const FisherMatrix2& a, const FisherMatrix2& b);

}  // namespace qgrav::oracle
