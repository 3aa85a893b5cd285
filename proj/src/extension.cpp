#include "dpm/extension.hpp"

namespace dpm {

double normal_derivative_2_value(double lambda, double kappa, double u_t,
                                 double f, double u_n, double u_thth) {
  return (u_t - f) / lambda - kappa * u_n - u_thth;
}

double normal_derivative_3_value(double lambda, double kappa, double u_tn,
                                 double f_n, double u_n, double u_nn,
                                 double u_thth, double u_nthth) {
  return (u_tn - f_n) / lambda + kappa * kappa * u_n - kappa * u_nn +
         2.0 * kappa * u_thth - u_nthth;
}

double normal_derivative_4_value(double lambda, double kappa, double u_tt,
                                 double f_t, double u_tn, double u_tthth,
                                 double f_nn, double f_thth, double u_n,
                                 double u_nn, double u_nnn, double u_thth,
                                 double u_nthth, double u_thththth,
                                 double lambda_dot, double u_t, double f) {
  const double k2 = kappa * kappa;
  return (u_tt - f_t) / (lambda * lambda) -
         lambda_dot / (lambda * lambda * lambda) * (u_t - f) +
         (-kappa * u_tn - 2.0 * u_tthth - f_nn + f_thth) / lambda -
         2.0 * k2 * kappa * u_n + 2.0 * k2 * u_nn - kappa * u_nnn -
         6.0 * k2 * u_thth + 5.0 * kappa * u_nthth + u_thththth;
}

namespace {

struct HistorySynth {
  // combined backward-tail coefficient vectors (already weighted)
  Eigen::VectorXd d_tail1, n_tail1, d_tail2;
  double lead1 = 0.0, lead2 = 0.0;
  bool has_tail2 = false;
};

HistorySynth make_history_synth(const ExtensionContext& ctx, int n0, int n1) {
  HistorySynth hs;
  const TimeDerivativeWeights w1 = bdf_first_derivative(ctx.bdf_order, ctx.dt);
  hs.lead1 = w1.lead;
  DPM_REQUIRE(ctx.dirichlet_history.size() >= w1.tail.size(),
              "Dirichlet trace history too short for the BDF order");
  hs.d_tail1 = Eigen::VectorXd::Zero(n0);
  for (size_t m = 0; m < w1.tail.size(); ++m)
    hs.d_tail1 += w1.tail[m] * ctx.dirichlet_history[m];
  if (ctx.taylor_order >= 3) {
    DPM_REQUIRE(ctx.neumann_history.size() >= w1.tail.size(),
                "Neumann trace history too short for the BDF order");
    hs.n_tail1 = Eigen::VectorXd::Zero(n1);
    for (size_t m = 0; m < w1.tail.size(); ++m)
      hs.n_tail1 += w1.tail[m] * ctx.neumann_history[m];
    const TimeDerivativeWeights w2 = bdf_second_derivative(
        static_cast<int>(ctx.dirichlet_history.size()), ctx.dt);
    hs.lead2 = w2.lead;
    hs.has_tail2 = !w2.tail.empty();
    hs.d_tail2 = Eigen::VectorXd::Zero(n0);
    for (size_t m = 0; m < w2.tail.size(); ++m)
      hs.d_tail2 += w2.tail[m] * ctx.dirichlet_history[m];
  }
  return hs;
}

struct PointRows {
  Eigen::RowVectorXd d0, d2, d4;  // Dirichlet basis values/derivatives
  Eigen::RowVectorXd n0, n2;      // Neumann basis values/derivatives
};

PointRows basis_rows(const TrigBasis& basis, double theta, int n0, int n1,
                     int taylor_order) {
  PointRows r;
  r.d0.resize(n0);
  r.d2.resize(n0);
  r.n0.resize(n1);
  for (int nu = 1; nu <= n0; ++nu) {
    r.d0[nu - 1] = basis.eval(nu, theta, 0);
    r.d2[nu - 1] = basis.eval(nu, theta, 2);
  }
  for (int nu = 1; nu <= n1; ++nu) r.n0[nu - 1] = basis.eval(nu, theta, 0);
  if (taylor_order >= 3) {
    r.d4.resize(n0);
    r.n2.resize(n1);
    for (int nu = 1; nu <= n0; ++nu) r.d4[nu - 1] = basis.eval(nu, theta, 4);
    for (int nu = 1; nu <= n1; ++nu) r.n2[nu - 1] = basis.eval(nu, theta, 2);
  }
  return r;
}

struct DerivativeSet {
  AffineFunctional v0, v1, v2, v3, v4;
};

DerivativeSet build_derivatives(double theta, double kappa,
                                const TrigBasis& basis,
                                const ExtensionContext& ctx, int gi) {
  const int n0 = static_cast<int>(ctx.dirichlet_history.empty()
                                      ? basis.size()
                                      : ctx.dirichlet_history[0].size());
  const int n1 = static_cast<int>(ctx.neumann_history.empty()
                                      ? basis.size()
                                      : ctx.neumann_history[0].size());
  const HistorySynth hs = make_history_synth(ctx, n0, n1);
  const PointRows r = basis_rows(basis, theta, n0, n1, ctx.taylor_order);
  const double lam = ctx.lambda;
  const double sig = hs.lead1;

  auto ftrace = [&](const Eigen::VectorXd& v) {
    return (gi >= 0 && v.size() > 0) ? v[gi] : 0.0;
  };
  const double f = ftrace(ctx.f);

  DerivativeSet s;
  // v0 = trace, v1 = normal derivative
  s.v0 = AffineFunctional(n0, n1);
  s.v0.d_row = r.d0;
  s.v1 = AffineFunctional(n0, n1);
  s.v1.n_row = r.n0;

  // v2 = (1/λ)(u_t − f) − κ u_n − u_ϑϑ
  const double ut_hist = basis.synthesize(hs.d_tail1, theta, 0);
  s.v2 = AffineFunctional(n0, n1);
  s.v2.d_row = (sig / lam) * r.d0 - r.d2;
  s.v2.n_row = -kappa * r.n0;
  s.v2.cst = (ut_hist - f) / lam;

  if (ctx.taylor_order < 3) return s;

  const double f_n = ftrace(ctx.f_n);
  const double f_t = ftrace(ctx.f_t);
  const double f_nn = ftrace(ctx.f_nn);
  const double f_thth = ftrace(ctx.f_thth);
  const double utn_hist = basis.synthesize(hs.n_tail1, theta, 0);
  const double utthth_hist = basis.synthesize(hs.d_tail1, theta, 2);
  const double utt_hist = hs.has_tail2 ? basis.synthesize(hs.d_tail2, theta, 0) : 0.0;
  const double k2 = kappa * kappa;

  // v3 = (1/λ)(u_tn − f_n) + κ² u_n − κ v2 + 2κ u_ϑϑ − u_nϑϑ
  s.v3 = AffineFunctional(n0, n1);
  s.v3 += s.v2 * (-kappa);
  s.v3.n_row += (sig / lam + k2) * r.n0 - r.n2;
  s.v3.d_row += 2.0 * kappa * r.d2;
  s.v3.cst += (utn_hist - f_n) / lam;

  // v4 = (1/λ²)(u_tt − f_t) + (1/λ)(−κ u_tn − 2 u_tϑϑ − f_nn + f_ϑϑ)
  //      − 2κ³ u_n + 2κ² v2 − κ v3 − 6κ² u_ϑϑ + 5κ u_nϑϑ + u_ϑϑϑϑ
  s.v4 = AffineFunctional(n0, n1);
  s.v4 += s.v2 * (2.0 * k2);
  s.v4 += s.v3 * (-kappa);
  const double dl3 = ctx.lambda_dot / (lam * lam * lam);
  s.v4.d_row += (hs.lead2 / (lam * lam)) * r.d0 - (2.0 * sig / lam) * r.d2 -
                6.0 * k2 * r.d2 + r.d4 - dl3 * sig * r.d0;
  s.v4.n_row += -(kappa * sig / lam) * r.n0 - 2.0 * k2 * kappa * r.n0 +
                5.0 * kappa * r.n2;
  s.v4.cst += (utt_hist - f_t) / (lam * lam) +
              (-kappa * utn_hist - 2.0 * utthth_hist - f_nn + f_thth) / lam -
              dl3 * (ut_hist - f);
  return s;
}

}  // namespace

AffineFunctional normal_derivative_functional(int order, double theta,
                                              double kappa,
                                              const TrigBasis& basis,
                                              const ExtensionContext& ctx,
                                              int gamma_index) {
  DPM_REQUIRE(order >= 0 && order <= 4, "normal derivative order out of range");
  DPM_REQUIRE(!(order > 2 && ctx.taylor_order < 3),
              "third and fourth normal derivatives require the fourth-order "
              "extension context");
  const DerivativeSet s = build_derivatives(theta, kappa, basis, ctx, gamma_index);
  switch (order) {
    case 0: return s.v0;
    case 1: return s.v1;
    case 2: return s.v2;
    case 3: return s.v3;
    default: return s.v4;
  }
}

ExtensionAssembly build_extension(const std::vector<GammaInfo>& gamma,
                                  const TrigBasis& basis,
                                  const ExtensionContext& ctx) {
  DPM_REQUIRE(ctx.taylor_order == 2 || ctx.taylor_order == 4,
              "Taylor order must be 2 or 4");
  DPM_REQUIRE(!ctx.dirichlet_history.empty(), "missing Dirichlet trace history");
  const int n0 = static_cast<int>(ctx.dirichlet_history[0].size());
  const int n1 = ctx.neumann_history.empty()
                     ? n0
                     : static_cast<int>(ctx.neumann_history[0].size());
  const Eigen::Index ng = static_cast<Eigen::Index>(gamma.size());

  ExtensionAssembly out;
  out.coeff.resize(ng, n0 + n1);
  out.history.resize(ng);
  for (Eigen::Index i = 0; i < ng; ++i) {
    const GammaInfo& g = gamma[static_cast<size_t>(i)];
    const DerivativeSet s =
        build_derivatives(g.theta, g.kappa, basis, ctx, static_cast<int>(i));
    const double d = g.d;
    AffineFunctional v(n0, n1);
    v += s.v0;
    v += s.v1 * d;
    v += s.v2 * (d * d / 2.0);
    if (ctx.taylor_order >= 4) {
      v += s.v3 * (d * d * d / 6.0);
      v += s.v4 * (d * d * d * d / 24.0);
    }
    out.coeff.block(i, 0, 1, n0) = v.d_row;
    out.coeff.block(i, n0, 1, n1) = v.n_row;
    out.history[i] = v.cst;
  }
  return out;
}

}  // namespace dpm
