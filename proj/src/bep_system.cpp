#include "dpm/bep_system.hpp"

namespace dpm {

Eigen::MatrixXd assemble_bep_matrix(const ExtensionAssembly& ext,
                                    const ApSolver& ap) {
  return ap.bep_image(ext.coeff);
}

std::pair<CauchyCoefficients, CauchyCoefficients> couple_interface(
    const Eigen::VectorXd& c_indep, const InterfaceCoupling& coupling, int n0,
    int n1) {
  DPM_REQUIRE(c_indep.size() == n0 + n1, "independent coefficient size mismatch");
  DPM_REQUIRE(coupling.lambda1 > 0.0 && coupling.lambda2 > 0.0,
              "interface coupling requires positive diffusivities");
  CauchyCoefficients ci, cd;
  ci.dirichlet = c_indep.head(n0);
  ci.neumann = c_indep.tail(n1);
  if (coupling.independent_side == 2) {
    // c1 from c2: u1 = u2 + mu1, λ1 u1_n = λ2 u2_n + mu2
    cd.dirichlet = ci.dirichlet + coupling.m1;
    cd.neumann = (coupling.lambda2 * ci.neumann + coupling.m2) / coupling.lambda1;
    return {cd, ci};
  }
  // c2 from c1
  cd.dirichlet = ci.dirichlet - coupling.m1;
  cd.neumann = (coupling.lambda1 * ci.neumann - coupling.m2) / coupling.lambda2;
  return {ci, cd};
}

ScaledLeastSquares::ScaledLeastSquares(Eigen::MatrixXd A) : A_(std::move(A)) {
  col_scale_.resize(A_.cols());
  Eigen::MatrixXd S = A_;
  for (Eigen::Index c = 0; c < A_.cols(); ++c) {
    const double n = A_.col(c).norm();
    col_scale_[c] = n > 0 ? 1.0 / n : 1.0;
    S.col(c) *= col_scale_[c];
  }
  qr_.compute(S);
  qr_.setThreshold(1e-10);
  DPM_REQUIRE(qr_.rank() == A_.cols(),
              "boundary system is rank deficient: basis truncation too large "
              "for this discrete grid boundary");
}

Eigen::VectorXd ScaledLeastSquares::solve(const Eigen::VectorXd& rhs) const {
  DPM_REQUIRE(A_.size() > 0, "least-squares system not assembled");
  Eigen::VectorXd y = qr_.solve(rhs);
  return col_scale_.asDiagonal() * y;
}

SingleDomainBep::SingleDomainBep(Eigen::MatrixXd neumann_block)
    : ls_(std::move(neumann_block)) {}

CompositeBep::CompositeBep(Eigen::MatrixXd A1, Eigen::MatrixXd A2,
                           int independent_side, double lambda1, double lambda2,
                           int n0, int n1)
    : A1_(std::move(A1)),
      A2_(std::move(A2)),
      side_(independent_side),
      lambda1_(lambda1),
      lambda2_(lambda2),
      n0_(n0),
      n1_(n1) {
  DPM_REQUIRE(side_ == 1 || side_ == 2, "independent side must be 1 or 2");
  DPM_REQUIRE(A1_.cols() == n0 + n1 && A2_.cols() == n0 + n1,
              "BEP block column count mismatch");
  // dependent side's columns composed with the linear part of the jump map
  Eigen::VectorXd tdiag(n0 + n1);
  tdiag.head(n0).setOnes();
  tdiag.tail(n1).setConstant(side_ == 2 ? lambda2_ / lambda1_
                                        : lambda1_ / lambda2_);
  Eigen::MatrixXd stacked(A1_.rows() + A2_.rows(), n0 + n1);
  if (side_ == 2) {
    stacked.topRows(A1_.rows()) = A1_ * tdiag.asDiagonal();
    stacked.bottomRows(A2_.rows()) = A2_;
  } else {
    stacked.topRows(A1_.rows()) = A1_;
    stacked.bottomRows(A2_.rows()) = A2_ * tdiag.asDiagonal();
  }
  ls_ = ScaledLeastSquares(std::move(stacked));
}

Eigen::VectorXd CompositeBep::dependent_shift(const Eigen::VectorXd& m1,
                                              const Eigen::VectorXd& m2) const {
  Eigen::VectorXd g(n0_ + n1_);
  if (side_ == 2) {
    g.head(n0_) = m1;
    g.tail(n1_) = m2 / lambda1_;
  } else {
    g.head(n0_) = -m1;
    g.tail(n1_) = -m2 / lambda2_;
  }
  return g;
}

Eigen::VectorXd CompositeBep::solve_independent(const Eigen::VectorXd& rhs1,
                                                const Eigen::VectorXd& rhs2,
                                                const Eigen::VectorXd& m1,
                                                const Eigen::VectorXd& m2) const {
  const Eigen::VectorXd g = dependent_shift(m1, m2);
  Eigen::VectorXd rhs(rhs1.size() + rhs2.size());
  if (side_ == 2) {
    rhs.head(rhs1.size()) = rhs1 - A1_ * g;
    rhs.tail(rhs2.size()) = rhs2;
  } else {
    rhs.head(rhs1.size()) = rhs1;
    rhs.tail(rhs2.size()) = rhs2 - A2_ * g;
  }
  return ls_.solve(rhs);
}

std::pair<CauchyCoefficients, CauchyCoefficients> CompositeBep::couple(
    const Eigen::VectorXd& c_indep, const Eigen::VectorXd& m1,
    const Eigen::VectorXd& m2) const {
  InterfaceCoupling coupling;
  coupling.independent_side = side_;
  coupling.lambda1 = lambda1_;
  coupling.lambda2 = lambda2_;
  coupling.m1 = m1;
  coupling.m2 = m2;
  return couple_interface(c_indep, coupling, n0_, n1_);
}

}  // namespace dpm
