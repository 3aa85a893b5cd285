#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "dpm/common.hpp"
#include "dpm/geometry.hpp"

namespace dpm {

/// Truncated Fourier coefficients of boundary Cauchy data: `dirichlet` holds
/// the trace coefficients, `neumann` the normal-derivative coefficients.
struct CauchyCoefficients {
  Eigen::VectorXd dirichlet;
  Eigen::VectorXd neumann;
};

/// Real trigonometric basis on a closed curve of length L:
///   phi_1 = 1, phi_{2k} = cos(2πkϑ/L), phi_{2k+1} = sin(2πkϑ/L).
/// Indices are 1-based to match that layout.
class TrigBasis {
 public:
  TrigBasis(double total_length, int n_functions);

  int size() const { return n_; }
  double total_length() const { return length_; }
  int max_frequency() const { return n_ / 2; }

  /// Value of the derivative of order `deriv` (0..4) of phi_nu at theta.
  double eval(int nu, double theta, int deriv = 0) const;

  double synthesize(const Eigen::VectorXd& coeffs, double theta,
                    int deriv = 0) const;

  /// Discrete L2 projection over the quadrature nodes. If `residual_out` is
  /// given, the weighted RMS residual is reported; otherwise an aliasing
  /// failure (large residual with saturated trailing modes) throws.
  Eigen::VectorXd project(const std::function<double(const CurvePoint&)>& f,
                          const std::vector<QuadratureNode>& quad,
                          double* residual_out = nullptr) const;

  Eigen::VectorXd project_values(const Eigen::VectorXd& values,
                                 const std::vector<QuadratureNode>& quad,
                                 double* residual_out = nullptr) const;

  /// Default quadrature node count used for projections onto this basis.
  int default_quadrature_nodes() const { return std::max(64, 8 * n_); }

 private:
  double length_;
  int n_;
  double omega_;  // 2π / L
};

}  // namespace dpm
