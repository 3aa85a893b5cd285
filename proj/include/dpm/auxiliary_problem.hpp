#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <memory>

#include "dpm/common.hpp"
#include "dpm/grid.hpp"
#include "dpm/operators.hpp"

namespace dpm {

/// Discrete Auxiliary Problem on the lattice: L u = q at interior nodes,
/// u = closure_value on the rest of the lattice (default 0). Solving it
/// defines the Green operator G; the difference potential of a density v on
/// gamma is P v = v_zext − G(L[v_zext] on M+), so (I − P_γ) applied to a
/// gamma function costs exactly one AP solve.
///
/// The factorization belongs to one (lambda, sigma) regime; set_regime is
/// cheap to skip when the regime is unchanged (returns false).
class ApSolver {
 public:
  ApSolver(const DiscreteOperator& op, const PointSets& sets);

  /// (Re)factorizes for the given regime. Returns true when work was done.
  bool set_regime(double lambda, double sigma);
  double lambda() const { return lambda_; }
  double sigma() const { return sigma_; }
  /// Counts factorizations, for regime-reuse checks.
  int regime_builds() const { return regime_builds_; }

  void set_closure_value(double c) { closure_ = c; }
  double closure_value() const { return closure_; }

  /// AP solve: q given on the lattice (only interior entries are read).
  Eigen::VectorXd solve_ap(const Eigen::VectorXd& q) const;
  Eigen::MatrixXd solve_ap(const Eigen::MatrixXd& q) const;

  /// L[v_zext] at M+ rows (zero elsewhere); v given in gamma ordering.
  Eigen::VectorXd density_rhs(const Eigen::VectorXd& v_gamma) const;

  /// Particular solution G F: F given on the lattice, read at M+ rows.
  Eigen::VectorXd particular_solution(const Eigen::VectorXd& F) const;

  /// Difference potential on the lattice (meaningful on N+).
  Eigen::VectorXd difference_potential(const Eigen::VectorXd& v_gamma) const;

  Eigen::VectorXd trace_gamma(const Eigen::VectorXd& u_lattice) const;

  /// P_γ v = Tr(P_{N+} v).
  Eigen::VectorXd p_gamma(const Eigen::VectorXd& v_gamma) const;

  /// (I − P_γ) v, one AP solve; batched column version chunks the solves.
  Eigen::VectorXd bep_image(const Eigen::VectorXd& v_gamma) const;
  Eigen::MatrixXd bep_image(const Eigen::MatrixXd& columns) const;

  /// AP solves restricted to the gamma trace of each column (the separable
  /// backend skips the full back-transform).
  Eigen::MatrixXd solve_ap_traces(const Eigen::MatrixXd& q) const;

  Eigen::VectorXd zero_extend(const Eigen::VectorXd& v_gamma) const;

  const DiscreteOperator& op() const { return op_; }
  const PointSets& sets() const { return sets_; }

 private:
  Eigen::VectorXd gather_interior(const Eigen::VectorXd& lattice) const;
  Eigen::VectorXd scatter_interior(const Eigen::VectorXd& interior) const;
  Eigen::MatrixXd solve_interior(const Eigen::MatrixXd& rhs_interior) const;

  const DiscreteOperator& op_;
  const PointSets& sets_;
  double lambda_ = 0.0, sigma_ = 0.0, closure_ = 0.0;
  int regime_builds_ = 0;
  bool separable_ = false;

  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu_;
  Eigen::VectorXd ring_couple_;  // (Δ · 1_ring) at interior rows

  // separable backend for symmetric operators: the interior system is
  // λ(Dx ⊗ I + I ⊗ Dy) − σI, diagonalized along x once per grid
  struct Separable {
    int mx = 0, my = 0, band = 1;
    Eigen::MatrixXd vx;        // eigenvectors of Dx (orthonormal columns)
    Eigen::VectorXd evals;     // eigenvalues of Dx
    double dy0 = 0, dy1 = 0, dy2 = 0;  // Dy stencil entries
    // banded Cholesky factors of (σ − λΛ_a)I − λDy, one set per mode
    Eigen::MatrixXd ch_d, ch_e1, ch_e2;  // my × mx

    void build(const AuxiliaryGrid& grid, StencilKind stencil);
    void factor(double lambda, double sigma);
    // solves the interior system for stacked fields; rhs is mx × (my*cols)
    Eigen::MatrixXd modal_rhs(const Eigen::MatrixXd& rhs_fields) const;
    void banded_solve_in_place(Eigen::MatrixXd& modal) const;
  };
  Separable sep_;
};

}  // namespace dpm
