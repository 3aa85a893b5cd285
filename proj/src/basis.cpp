#include "dpm/basis.hpp"

namespace dpm {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TrigBasis::TrigBasis(double total_length, int n_functions)
    : length_(total_length), n_(n_functions) {
  DPM_REQUIRE(total_length > 0.0, "basis needs a positive curve length");
  DPM_REQUIRE(n_functions >= 1, "basis needs at least one function");
  omega_ = 2.0 * kPi / length_;
}

double TrigBasis::eval(int nu, double theta, int deriv) const {
  DPM_REQUIRE(nu >= 1 && nu <= n_, "basis index out of range");
  DPM_REQUIRE(deriv >= 0 && deriv <= 4, "derivative order out of range");
  if (nu == 1) return deriv == 0 ? 1.0 : 0.0;
  const int k = nu / 2;
  const double a = k * omega_;
  const double arg = a * theta;
  const double scale = std::pow(a, deriv);
  const bool is_cos = (nu % 2 == 0);
  // derivative cycle: cos → −sin → −cos → sin → cos
  switch (deriv % 4) {
    case 0: return scale * (is_cos ? std::cos(arg) : std::sin(arg));
    case 1: return scale * (is_cos ? -std::sin(arg) : std::cos(arg));
    case 2: return scale * (is_cos ? -std::cos(arg) : -std::sin(arg));
    default: return scale * (is_cos ? std::sin(arg) : -std::cos(arg));
  }
}

double TrigBasis::synthesize(const Eigen::VectorXd& coeffs, double theta,
                             int deriv) const {
  DPM_REQUIRE(coeffs.size() == n_, "coefficient vector length mismatch");
  double v = 0.0;
  for (int nu = 1; nu <= n_; ++nu) v += coeffs[nu - 1] * eval(nu, theta, deriv);
  return v;
}

Eigen::VectorXd TrigBasis::project(
    const std::function<double(const CurvePoint&)>& f,
    const std::vector<QuadratureNode>& quad, double* residual_out) const {
  Eigen::VectorXd values(quad.size());
  for (size_t q = 0; q < quad.size(); ++q) values[q] = f(quad[q].point);
  return project_values(values, quad, residual_out);
}

Eigen::VectorXd TrigBasis::project_values(const Eigen::VectorXd& values,
                                          const std::vector<QuadratureNode>& quad,
                                          double* residual_out) const {
  const int nq = static_cast<int>(quad.size());
  DPM_REQUIRE(values.size() == nq, "sample vector length mismatch");
  DPM_REQUIRE(nq >= 2 * max_frequency() + 2,
              "quadrature under-resolved for this basis");
  Eigen::MatrixXd B(nq, n_);
  Eigen::VectorXd rhs(nq);
  for (int q = 0; q < nq; ++q) {
    const double sw = std::sqrt(quad[q].weight);
    const double th = quad[q].point.arclength;
    for (int nu = 1; nu <= n_; ++nu) B(q, nu - 1) = sw * eval(nu, th);
    rhs[q] = sw * values[q];
  }
  Eigen::VectorXd c = B.colPivHouseholderQr().solve(rhs);
  const double res = (B * c - rhs).norm();
  if (residual_out != nullptr) {
    *residual_out = res;
  } else {
    // aliasing guard: a large residual with saturated trailing modes means
    // the data has frequency content beyond the truncation
    const double scale = rhs.norm();
    if (res > 1e-8 * std::max(scale, 1.0)) {
      const double cmax = c.cwiseAbs().maxCoeff();
      const double trailing =
          c.tail(std::min<int>(2, c.size())).cwiseAbs().maxCoeff();
      if (cmax > 0 && trailing > 0.5 * cmax)
        fail("projection aliasing: residual " + std::to_string(res) +
             " with saturated trailing coefficients");
    }
  }
  return c;
}

}  // namespace dpm
