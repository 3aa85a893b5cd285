#pragma once

#include <Eigen/Dense>

#include "dpm/auxiliary_problem.hpp"
#include "dpm/basis.hpp"
#include "dpm/extension.hpp"

namespace dpm {

/// One subdomain block of the boundary equations: column nu is
/// (I − P_γ) Ex Φ_nu, costing one AP solve each.
Eigen::MatrixXd assemble_bep_matrix(const ExtensionAssembly& ext,
                                    const ApSolver& ap);

struct InterfaceCoupling {
  int independent_side = 2;
  double lambda1 = 1.0, lambda2 = 1.0;
  Eigen::VectorXd m1, m2;  // jump coefficient vectors in the shared basis
};

/// Reconstructs both sides' Cauchy coefficients from the independent side:
///   c1_D = c2_D + m1,  λ1 c1_N = λ2 c2_N + m2  (and the inverse relations).
std::pair<CauchyCoefficients, CauchyCoefficients> couple_interface(
    const Eigen::VectorXd& c_indep, const InterfaceCoupling& coupling, int n0,
    int n1);

/// Column-scaled least squares with a rank guard. Factors once per regime;
/// solve() is cheap.
class ScaledLeastSquares {
 public:
  ScaledLeastSquares() = default;
  explicit ScaledLeastSquares(Eigen::MatrixXd A);
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;
  const Eigen::MatrixXd& matrix() const { return A_; }
  double residual(const Eigen::VectorXd& x, const Eigen::VectorXd& rhs) const {
    return (A_ * x - rhs).norm();
  }

 private:
  Eigen::MatrixXd A_;
  Eigen::VectorXd col_scale_;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr_;
};

/// Single-domain boundary system: the Dirichlet coefficients are fixed by
/// the boundary data, and the least squares runs over the Neumann columns.
class SingleDomainBep {
 public:
  SingleDomainBep() = default;
  SingleDomainBep(Eigen::MatrixXd neumann_block);
  /// rhs must already account for Dirichlet columns and extension history.
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const {
    return ls_.solve(rhs);
  }
  const ScaledLeastSquares& ls() const { return ls_; }

 private:
  ScaledLeastSquares ls_;
};

/// Composite interface system, stacked over both subdomains with the
/// dependent side's coefficients eliminated through the jump relations.
class CompositeBep {
 public:
  CompositeBep() = default;
  CompositeBep(Eigen::MatrixXd A1, Eigen::MatrixXd A2, int independent_side,
               double lambda1, double lambda2, int n0, int n1);

  /// rhs_s = Tr G F_s − (I − P_γ) history_s; m1/m2 are the projected jumps.
  Eigen::VectorXd solve_independent(const Eigen::VectorXd& rhs1,
                                    const Eigen::VectorXd& rhs2,
                                    const Eigen::VectorXd& m1,
                                    const Eigen::VectorXd& m2) const;

  std::pair<CauchyCoefficients, CauchyCoefficients> couple(
      const Eigen::VectorXd& c_indep, const Eigen::VectorXd& m1,
      const Eigen::VectorXd& m2) const;

  int independent_side() const { return side_; }

 private:
  Eigen::VectorXd dependent_shift(const Eigen::VectorXd& m1,
                                  const Eigen::VectorXd& m2) const;

  Eigen::MatrixXd A1_, A2_;
  int side_ = 2;
  double lambda1_ = 1.0, lambda2_ = 1.0;
  int n0_ = 0, n1_ = 0;
  ScaledLeastSquares ls_;
};

}  // namespace dpm
