#pragma once

#include <Eigen/Dense>
#include <vector>

#include "dpm/basis.hpp"
#include "dpm/grid.hpp"
#include "dpm/operators.hpp"

namespace dpm {

/// Exact normal derivatives of a PDE solution on the curve, obtained by
/// recasting u_t = λΔu + f in normal/arclength coordinates (d, ϑ) with
/// metric 1 + dκ and eliminating normal derivatives of order ≥ 2. Valid at
/// d = 0 for curves whose curvature is constant along the curve; κ is the
/// divergence of the outward normal field (+1/R for a circle).
double normal_derivative_2_value(double lambda, double kappa, double u_t,
                                 double f, double u_n, double u_thth);
double normal_derivative_3_value(double lambda, double kappa, double u_tn,
                                 double f_n, double u_n, double u_nn,
                                 double u_thth, double u_nthth);
/// `lambda_dot` is dλ/dt at the new time level: differentiating the
/// second-derivative elimination in time injects −(λ̇/λ³)(u_t − f).
double normal_derivative_4_value(double lambda, double kappa, double u_tt,
                                 double f_t, double u_tn, double u_tthth,
                                 double f_nn, double f_thth, double u_n,
                                 double u_nn, double u_nnn, double u_thth,
                                 double u_nthth, double u_thththth,
                                 double lambda_dot = 0.0, double u_t = 0.0,
                                 double f = 0.0);

/// Known data entering the extension at one time level: coefficient
/// histories of the Cauchy data (most recent first) and forcing traces at
/// the gamma projections. Time derivatives at the new level are replaced by
/// backward-difference surrogates of order `bdf_order`; the second time
/// derivative uses the deepest formula the Dirichlet history supports.
struct ExtensionContext {
  int taylor_order = 2;  // p: 2 or 4
  int bdf_order = 2;
  double dt = 0.0;
  double lambda = 1.0;
  double lambda_dot = 0.0;  // dλ/dt at the new level (time-dependent diffusion)

  std::vector<Eigen::VectorXd> dirichlet_history;
  std::vector<Eigen::VectorXd> neumann_history;

  // forcing traces at the gamma points (same ordering as gamma_info);
  // f_n, f_nn, f_thth, f_t may be empty when taylor_order == 2
  Eigen::VectorXd f, f_n, f_nn, f_thth, f_t;
};

/// Affine decomposition of the extension: values at gamma points equal
/// coeff · [c_dirichlet; c_neumann] + history.
struct ExtensionAssembly {
  Eigen::MatrixXd coeff;
  Eigen::VectorXd history;

  Eigen::VectorXd extend(const Eigen::VectorXd& c) const {
    return coeff * c + history;
  }
  Eigen::VectorXd extend(const CauchyCoefficients& c) const {
    Eigen::VectorXd full(c.dirichlet.size() + c.neumann.size());
    full << c.dirichlet, c.neumann;
    return extend(full);
  }
};

/// Affine functional of the unknown Cauchy coefficients at one gamma point.
struct AffineFunctional {
  Eigen::RowVectorXd d_row, n_row;
  double cst = 0.0;

  AffineFunctional() = default;
  AffineFunctional(int n0, int n1)
      : d_row(Eigen::RowVectorXd::Zero(n0)),
        n_row(Eigen::RowVectorXd::Zero(n1)) {}
  AffineFunctional& operator+=(const AffineFunctional& o) {
    d_row += o.d_row;
    n_row += o.n_row;
    cst += o.cst;
    return *this;
  }
  AffineFunctional operator*(double s) const {
    AffineFunctional r = *this;
    r.d_row *= s;
    r.n_row *= s;
    r.cst *= s;
    return r;
  }
  double value(const Eigen::VectorXd& c0, const Eigen::VectorXd& c1) const {
    return d_row.dot(c0) + n_row.dot(c1) + cst;
  }
};

/// Normal derivative of order 0..p as an affine functional of the new-level
/// Cauchy coefficients, at arclength theta with curvature kappa.
/// `gamma_index` selects the forcing-trace entries (pass −1 with zero
/// forcing).
AffineFunctional normal_derivative_functional(int order, double theta,
                                              double kappa,
                                              const TrigBasis& basis,
                                              const ExtensionContext& ctx,
                                              int gamma_index);

/// Builds the full extension: Taylor expansion in the signed distance with
/// normal derivatives 2..p eliminated through the PDE.
ExtensionAssembly build_extension(const std::vector<GammaInfo>& gamma,
                                  const TrigBasis& basis,
                                  const ExtensionContext& ctx);

}  // namespace dpm
