#include "dpm/auxiliary_problem.hpp"

namespace dpm {

// ---------------------------------------------------------------------------
// separable backend
// ---------------------------------------------------------------------------

void ApSolver::Separable::build(const AuxiliaryGrid& grid, StencilKind stencil) {
  mx = grid.nx - 2;
  my = grid.ny - 2;
  const double h = grid.h();
  if (stencil == StencilKind::FivePoint) {
    band = 1;
    dy0 = -2.0 / (h * h);
    dy1 = 1.0 / (h * h);
    dy2 = 0.0;
  } else {
    band = 2;
    const double s = 1.0 / (12.0 * h * h);
    dy0 = -30.0 * s;
    dy1 = 16.0 * s;
    dy2 = -1.0 * s;
  }
  Eigen::MatrixXd dx = Eigen::MatrixXd::Zero(mx, mx);
  for (int a = 0; a < mx; ++a) {
    dx(a, a) = dy0;
    if (a + 1 < mx) dx(a, a + 1) = dx(a + 1, a) = dy1;
    if (band == 2 && a + 2 < mx) dx(a, a + 2) = dx(a + 2, a) = dy2;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(dx);
  DPM_REQUIRE(eig.info() == Eigen::Success, "1D operator eigensolve failed");
  vx = eig.eigenvectors();
  evals = eig.eigenvalues();
}

void ApSolver::Separable::factor(double lambda, double sigma) {
  // per x-mode banded Cholesky of (σ − λΛ_a)I − λDy (positive definite)
  ch_d.resize(my, mx);
  ch_e1.resize(my, mx);
  ch_e2.resize(my, mx);
  const double a1 = -lambda * dy1;
  const double a2 = -lambda * dy2;
  for (int a = 0; a < mx; ++a) {
    const double a0 = sigma - lambda * evals[a] - lambda * dy0;
    double* d = ch_d.col(a).data();
    double* e1 = ch_e1.col(a).data();
    double* e2 = ch_e2.col(a).data();
    for (int i = 0; i < my; ++i) {
      const double l2 = (i >= 2) ? a2 / d[i - 2] : 0.0;
      const double l1 = (i >= 1) ? (a1 - (i >= 2 ? l2 * d[i - 2] * e1[i - 1] : 0.0)) / d[i - 1]
                                 : 0.0;
      // unit lower banded LDL^T: L(i,i-1) = l1, L(i,i-2) = l2, D(i) = dii
      double dii = a0;
      if (i >= 1) dii -= l1 * l1 * d[i - 1];
      if (i >= 2) dii -= l2 * l2 * d[i - 2];
      DPM_REQUIRE(dii > 0.0, "separable AP factorization lost definiteness");
      d[i] = dii;
      e1[i] = l1;
      e2[i] = l2;
    }
  }
}

Eigen::MatrixXd ApSolver::Separable::modal_rhs(const Eigen::MatrixXd& fields) const {
  // forward transform; skip leading/trailing all-zero row blocks
  int lo = 0, hi = static_cast<int>(fields.rows()) - 1;
  while (lo < hi && fields.row(lo).isZero(0.0)) ++lo;
  while (hi > lo && fields.row(hi).isZero(0.0)) --hi;
  const int len = hi - lo + 1;
  return vx.middleRows(lo, len).transpose() * fields.middleRows(lo, len);
}

void ApSolver::Separable::banded_solve_in_place(Eigen::MatrixXd& modal) const {
  // LDL^T solve per mode and field; the system sign flips the rhs
  const Eigen::Index nfields = modal.cols() / my;
  for (Eigen::Index c = 0; c < nfields; ++c) {
    for (int a = 0; a < mx; ++a) {
      const double* d = ch_d.col(a).data();
      const double* e1 = ch_e1.col(a).data();
      const double* e2 = ch_e2.col(a).data();
      auto v = [&](int i) -> double& { return modal(a, c * my + i); };
      // forward substitution of L y = -rhs (unit lower, scaled entries)
      for (int i = 0; i < my; ++i) {
        double r = -v(i);
        if (i >= 1) r -= e1[i] * d[i - 1] * v(i - 1);
        if (i >= 2) r -= e2[i] * d[i - 2] * v(i - 2);
        v(i) = r / d[i];
      }
      // back substitution of L^T x = y (in the same scaled form)
      for (int i = my - 1; i >= 0; --i) {
        double r = v(i);
        if (i + 1 < my) r -= e1[i + 1] * v(i + 1);
        if (i + 2 < my) r -= e2[i + 2] * v(i + 2);
        v(i) = r;
      }
    }
  }
}

// ---------------------------------------------------------------------------
// ApSolver
// ---------------------------------------------------------------------------

ApSolver::ApSolver(const DiscreteOperator& op, const PointSets& sets)
    : op_(op), sets_(sets) {
  const auto& grid = op_.grid();
  Eigen::VectorXd ring = Eigen::VectorXd::Zero(grid.total_nodes());
  for (int j = 0; j < grid.nx; ++j)
    for (int k = 0; k < grid.ny; ++k)
      if (grid.is_ring(j, k)) ring[grid.id(j, k)] = 1.0;
  ring_couple_ = op_.delta() * ring;

  separable_ = op_.symmetric();
  if (separable_) sep_.build(grid, op_.stencil());
}

bool ApSolver::set_regime(double lambda, double sigma) {
  if (lambda == lambda_ && sigma == sigma_ && regime_builds_ > 0) return false;
  DPM_REQUIRE(lambda > 0.0 && sigma > 0.0,
              "AP regime requires lambda > 0 and sigma > 0");
  lambda_ = lambda;
  sigma_ = sigma;
  if (separable_) {
    sep_.factor(lambda, sigma);
  } else {
    Eigen::SparseMatrix<double> A = op_.system_matrix(lambda, sigma);
    if (regime_builds_ == 0) lu_.analyzePattern(A);
    lu_.factorize(A);
    DPM_REQUIRE(lu_.info() == Eigen::Success, "AP factorization failed");
  }
  ++regime_builds_;
  return true;
}

Eigen::VectorXd ApSolver::gather_interior(const Eigen::VectorXd& lattice) const {
  const auto& nodes = op_.interior_nodes();
  Eigen::VectorXd v(nodes.size());
  for (size_t i = 0; i < nodes.size(); ++i)
    v[static_cast<Eigen::Index>(i)] = lattice[nodes[i]];
  return v;
}

Eigen::VectorXd ApSolver::scatter_interior(const Eigen::VectorXd& interior) const {
  const auto& nodes = op_.interior_nodes();
  Eigen::VectorXd out =
      Eigen::VectorXd::Constant(op_.grid().total_nodes(), closure_);
  for (size_t i = 0; i < nodes.size(); ++i)
    out[nodes[i]] = interior[static_cast<Eigen::Index>(i)];
  return out;
}

Eigen::MatrixXd ApSolver::solve_interior(const Eigen::MatrixXd& rhs) const {
  DPM_REQUIRE(regime_builds_ > 0, "AP regime not set");
  if (!separable_) return lu_.solve(rhs);
  // each rhs column is an mx-by-my field; the contiguous buffer of the whole
  // block is the stacked field matrix
  Eigen::Map<const Eigen::MatrixXd> fields(rhs.data(), sep_.mx,
                                           sep_.my * rhs.cols());
  Eigen::MatrixXd modal = sep_.modal_rhs(fields);
  sep_.banded_solve_in_place(modal);
  Eigen::MatrixXd back = sep_.vx * modal;
  return Eigen::Map<Eigen::MatrixXd>(back.data(), rhs.rows(), rhs.cols());
}

Eigen::VectorXd ApSolver::solve_ap(const Eigen::VectorXd& q) const {
  Eigen::VectorXd rhs = gather_interior(q);
  if (closure_ != 0.0) rhs -= closure_ * lambda_ * gather_interior(ring_couple_);
  const Eigen::MatrixXd sol = solve_interior(rhs);
  return scatter_interior(sol.col(0));
}

Eigen::MatrixXd ApSolver::solve_ap(const Eigen::MatrixXd& q) const {
  const auto& nodes = op_.interior_nodes();
  Eigen::MatrixXd rhs(nodes.size(), q.cols());
  for (size_t i = 0; i < nodes.size(); ++i)
    rhs.row(static_cast<Eigen::Index>(i)) = q.row(nodes[i]);
  if (closure_ != 0.0) {
    const Eigen::VectorXd rc = closure_ * lambda_ * gather_interior(ring_couple_);
    rhs.colwise() -= rc;
  }
  const Eigen::MatrixXd sol = solve_interior(rhs);
  Eigen::MatrixXd out = Eigen::MatrixXd::Constant(op_.grid().total_nodes(),
                                                  q.cols(), closure_);
  for (size_t i = 0; i < nodes.size(); ++i)
    out.row(nodes[i]) = sol.row(static_cast<Eigen::Index>(i));
  return out;
}

Eigen::MatrixXd ApSolver::solve_ap_traces(const Eigen::MatrixXd& q) const {
  const Eigen::Index ng = static_cast<Eigen::Index>(sets_.gamma.size());
  if (!separable_ || closure_ != 0.0) {
    const Eigen::MatrixXd sol = solve_ap(q);
    Eigen::MatrixXd out(ng, q.cols());
    for (Eigen::Index c = 0; c < q.cols(); ++c)
      for (Eigen::Index i = 0; i < ng; ++i)
        out(i, c) = sol(sets_.gamma[static_cast<size_t>(i)], c);
    return out;
  }
  DPM_REQUIRE(regime_builds_ > 0, "AP regime not set");
  const auto& nodes = op_.interior_nodes();
  Eigen::MatrixXd rhs(nodes.size(), q.cols());
  for (size_t i = 0; i < nodes.size(); ++i)
    rhs.row(static_cast<Eigen::Index>(i)) = q.row(nodes[i]);
  Eigen::Map<const Eigen::MatrixXd> fields(rhs.data(), sep_.mx,
                                           sep_.my * q.cols());
  Eigen::MatrixXd modal = sep_.modal_rhs(fields);
  sep_.banded_solve_in_place(modal);
  // back-transform only at the gamma nodes
  const auto& grid = op_.grid();
  Eigen::MatrixXd out(ng, q.cols());
  for (Eigen::Index c = 0; c < q.cols(); ++c) {
    for (Eigen::Index i = 0; i < ng; ++i) {
      const int node = sets_.gamma[static_cast<size_t>(i)];
      const int a = grid.jx(node) - 1;
      const int b = grid.ky(node) - 1;
      out(i, c) = sep_.vx.row(a).dot(modal.col(c * sep_.my + b));
    }
  }
  return out;
}

Eigen::VectorXd ApSolver::zero_extend(const Eigen::VectorXd& v_gamma) const {
  DPM_REQUIRE(v_gamma.size() == static_cast<Eigen::Index>(sets_.gamma.size()),
              "gamma function length mismatch");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(op_.grid().total_nodes());
  for (size_t i = 0; i < sets_.gamma.size(); ++i)
    out[sets_.gamma[i]] = v_gamma[static_cast<Eigen::Index>(i)];
  return out;
}

Eigen::VectorXd ApSolver::density_rhs(const Eigen::VectorXd& v_gamma) const {
  const Eigen::VectorXd vz = zero_extend(v_gamma);
  Eigen::VectorXd Lv = lambda_ * (op_.delta() * vz) - sigma_ * vz;
  Eigen::VectorXd q = Eigen::VectorXd::Zero(Lv.size());
  for (int n : sets_.m_plus) q[n] = Lv[n];
  return q;
}

Eigen::VectorXd ApSolver::particular_solution(const Eigen::VectorXd& F) const {
  Eigen::VectorXd q = Eigen::VectorXd::Zero(F.size());
  for (int n : sets_.m_plus) q[n] = F[n];
  return solve_ap(q);
}

Eigen::VectorXd ApSolver::difference_potential(const Eigen::VectorXd& v_gamma) const {
  const Eigen::VectorXd w = solve_ap(density_rhs(v_gamma));
  Eigen::VectorXd out = zero_extend(v_gamma) - w;
  // the potential lives on N+
  for (int n = 0; n < out.size(); ++n)
    if (!sets_.in_n_plus[n]) out[n] = 0.0;
  return out;
}

Eigen::VectorXd ApSolver::trace_gamma(const Eigen::VectorXd& u_lattice) const {
  Eigen::VectorXd v(sets_.gamma.size());
  for (size_t i = 0; i < sets_.gamma.size(); ++i)
    v[static_cast<Eigen::Index>(i)] = u_lattice[sets_.gamma[i]];
  return v;
}

Eigen::VectorXd ApSolver::p_gamma(const Eigen::VectorXd& v_gamma) const {
  return v_gamma - bep_image(v_gamma);
}

Eigen::VectorXd ApSolver::bep_image(const Eigen::VectorXd& v_gamma) const {
  return solve_ap_traces(Eigen::MatrixXd(density_rhs(v_gamma))).col(0);
}

Eigen::MatrixXd ApSolver::bep_image(const Eigen::MatrixXd& columns) const {
  const Eigen::Index ng = static_cast<Eigen::Index>(sets_.gamma.size());
  DPM_REQUIRE(columns.rows() == ng, "gamma block row count mismatch");
  Eigen::MatrixXd out(ng, columns.cols());
  const Eigen::Index chunk = 16;
  const int lattice = op_.grid().total_nodes();
  for (Eigen::Index c0 = 0; c0 < columns.cols(); c0 += chunk) {
    const Eigen::Index nc = std::min(chunk, columns.cols() - c0);
    Eigen::MatrixXd q(lattice, nc);
    for (Eigen::Index c = 0; c < nc; ++c)
      q.col(c) = density_rhs(columns.col(c0 + c));
    out.middleCols(c0, nc) = solve_ap_traces(q);
  }
  return out;
}

}  // namespace dpm
