// Acceptance suite: reproduces the benchmark tables and the method's
// structural properties at pinned tolerances, one PASS/FAIL line each.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "dpm/bench.hpp"
#include "dpm/bep_system.hpp"
#include "dpm/extension.hpp"
#include "dpm/problems.hpp"
#include "dpm/timestepper.hpp"

using namespace dpm;

namespace {

int g_failures = 0;
std::vector<std::string> g_notes;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("CRITERION %d: %s — %s\n", criterion, pass ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

bool within_factor(double value, double reference, double factor) {
  return value >= reference / factor && value <= reference * factor;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4e", v);
  return buf;
}

struct TableRun {
  std::vector<ConvergenceRecord> records;
  std::vector<RunResult> runs;
  double fitted = 0;
};

TableRun run_table(const std::string& problem, int order, GeometryMode geometry,
                   const std::vector<int>& grids) {
  SolverConfig cfg;
  cfg.problem = problem;
  cfg.order = order;
  cfg.geometry = geometry;
  std::printf("[acceptance] table: %s order %d %s grids", problem.c_str(), order,
              geometry == GeometryMode::Implicit ? "implicit" : "explicit");
  for (int g : grids) std::printf(" %d", g);
  std::printf("\n");
  std::fflush(stdout);
  TableRun out;
  RefinementResult r = run_refinement(cfg, grids, RateConvention::SqrtDof, true);
  out.records = std::move(r.records);
  out.runs = std::move(r.runs);
  out.fitted = fitted_rate(out.records);
  return out;
}

std::string row_summary(const TableRun& t) {
  std::string s;
  for (size_t i = 0; i < t.records.size(); ++i) {
    if (i) s += ", ";
    s += fmt(t.records[i].max_error);
  }
  char buf[48];
  std::snprintf(buf, sizeof(buf), " (fitted rate %.2f)", t.fitted);
  return s + buf;
}

bool check_rows(const TableRun& t, const std::vector<double>& refs,
                double factor, std::string& why) {
  bool ok = true;
  for (size_t i = 0; i < refs.size(); ++i) {
    if (!within_factor(t.records[i].max_error, refs[i], factor)) {
      ok = false;
      why += " row " + std::to_string(i + 1) + ": " +
             fmt(t.records[i].max_error) + " vs " + fmt(refs[i]) + " (factor " +
             fmt(t.records[i].max_error / refs[i]) + ");";
    }
  }
  return ok;
}

const std::vector<int> kGrids{100, 200, 400};

}  // namespace

// --- criteria 1..6: convergence tables ------------------------------------

static TableRun tp1a_dpm2_cache, tp1a_dpm4_cache;

static void criterion_1() {
  TableRun dpm2 = run_table("tp1a", 2, GeometryMode::Explicit, kGrids);
  TableRun dpm4 = run_table("tp1a", 4, GeometryMode::Explicit, kGrids);
  tp1a_dpm2_cache = dpm2;
  tp1a_dpm4_cache = dpm4;

  std::string why;
  bool ok = check_rows(dpm2, {1.7105e-5, 4.1980e-6, 1.0135e-6}, 2.0, why);
  if (std::abs(dpm2.fitted - 2.0) > 0.3) {
    ok = false;
    why += " DPM2 fitted rate " + fmt(dpm2.fitted) + " outside 2.0±0.3;";
  }
  if (dpm4.fitted < 4.0) {
    ok = false;
    why += " DPM4 fitted rate " + fmt(dpm4.fitted) + " below 4.0;";
  }
  const double runtime_400 = dpm2.runs.back().runtime_seconds;
  if (runtime_400 > 600.0) {
    ok = false;
    why += " 400^2 order-2 run took " + fmt(runtime_400) + " s (> 600);";
  }
  char buf[96];
  std::snprintf(buf, sizeof(buf), "; DPM4 rate %.2f; 400^2 run %.1f s",
                dpm4.fitted, runtime_400);
  report(1, ok, "TP-1A DPM2 " + row_summary(dpm2) + buf + why);
}

static void criterion_2() {
  TableRun dpm2 = run_table("tp3a", 2, GeometryMode::Explicit, kGrids);
  TableRun dpm4 = run_table("tp3a", 4, GeometryMode::Explicit, kGrids);

  std::string why;
  bool ok = check_rows(dpm2, {1.7721e-5, 4.3619e-6, 1.0526e-6}, 2.0, why);
  if (std::abs(dpm2.fitted - 2.0) > 0.3) {
    ok = false;
    why += " DPM2 fitted rate " + fmt(dpm2.fitted) + " outside 2.0±0.3;";
  }
  if (dpm4.fitted < 4.0) {
    ok = false;
    why += " DPM4 fitted rate " + fmt(dpm4.fitted) + " below 4.0;";
  }
  // row-wise proximity to TP-1A with the constant diffusion coefficient
  auto rowwise = [&](const TableRun& t3a, const TableRun& t1a,
                     const std::string& tag) {
    for (size_t i = 0; i < kGrids.size(); ++i) {
      const double a = t3a.records[i].max_error;
      const double b = t1a.records[i].max_error;
      if (std::abs(a - b) > 0.2 * b) {
        ok = false;
        why += " " + tag + " row " + std::to_string(i + 1) +
               " differs from TP-1A by " + fmt(std::abs(a - b) / b) + ";";
      }
    }
  };
  rowwise(dpm2, tp1a_dpm2_cache, "DPM2");
  rowwise(dpm4, tp1a_dpm4_cache, "DPM4");
  report(2, ok, "TP-3A DPM2 " + row_summary(dpm2) + "; DPM4 rate " +
                    fmt(dpm4.fitted) + why);
}

static TableRun tp2a_dpm2_cache, tp2a_dpm4_cache;

static void criterion_3() {
  TableRun dpm2 = run_table("tp2a", 2, GeometryMode::Explicit, kGrids);
  TableRun dpm4 = run_table("tp2a", 4, GeometryMode::Explicit, kGrids);
  tp2a_dpm2_cache = dpm2;
  tp2a_dpm4_cache = dpm4;

  std::string why;
  bool ok = check_rows(dpm2, {3.6380e-5, 8.8360e-6, 2.1331e-6}, 2.0, why);
  ok &= check_rows(dpm4, {7.7484e-9, 4.5617e-10, 2.6398e-11}, 3.0, why);
  if (std::abs(dpm2.fitted - 2.0) > 0.3) {
    ok = false;
    why += " DPM2 fitted rate " + fmt(dpm2.fitted) + " outside 2.0±0.3;";
  }
  if (std::abs(dpm4.fitted - 4.0) > 0.4) {
    ok = false;
    why += " DPM4 fitted rate " + fmt(dpm4.fitted) + " outside 4.0±0.4;";
  }
  report(3, ok, "TP-2A DPM2 " + row_summary(dpm2) + "; DPM4 " +
                    row_summary(dpm4) + why);
}

static void criterion_4() {
  TableRun dpm2 = run_table("tp2b", 2, GeometryMode::Explicit, kGrids);
  TableRun dpm4 = run_table("tp2b", 4, GeometryMode::Explicit, kGrids);

  std::string why;
  bool ok = check_rows(dpm2, {7.1899e-2, 1.7868e-2, 4.4952e-3}, 2.0, why);
  const double last_pair = convergence_rate(
      dpm4.records[1].dof, dpm4.records[1].max_error, dpm4.records[2].dof,
      dpm4.records[2].max_error);
  if (last_pair < 3.5) {
    ok = false;
    why += " DPM4 last-pair rate " + fmt(last_pair) + " below 3.5;";
  }
  report(4, ok, "TP-2B DPM2 " + row_summary(dpm2) + "; DPM4 last-pair rate " +
                    fmt(last_pair) + why);
}

static TableRun tp2c_dpm2_cache, tp2c_dpm4_cache;

static void criterion_5() {
  TableRun dpm2 = run_table("tp2c", 2, GeometryMode::Explicit, kGrids);
  TableRun dpm4 = run_table("tp2c", 4, GeometryMode::Explicit, kGrids);
  tp2c_dpm2_cache = dpm2;
  tp2c_dpm4_cache = dpm4;

  std::string why;
  bool ok = check_rows(dpm2, {1.1178e-1, 1.8941e-2, 4.0950e-3}, 2.0, why);
  ok &= check_rows(dpm4, {1.1392e-3, 5.9291e-5, 3.2716e-6}, 3.0, why);
  report(5, ok, "TP-2C DPM2 " + row_summary(dpm2) + "; DPM4 " +
                    row_summary(dpm4) + why);
}

static void criterion_6() {
  TableRun i2 = run_table("tp2a", 2, GeometryMode::Implicit, kGrids);
  TableRun i4 = run_table("tp2a", 4, GeometryMode::Implicit, kGrids);
  TableRun c2 = run_table("tp2c", 2, GeometryMode::Implicit, kGrids);
  TableRun c4 = run_table("tp2c", 4, GeometryMode::Implicit, kGrids);

  std::string why;
  bool ok = true;
  auto match = [&](const TableRun& imp, const TableRun& exp, double rel,
                   const std::string& tag) {
    for (size_t i = 0; i < kGrids.size(); ++i) {
      const double a = imp.records[i].max_error;
      const double b = exp.records[i].max_error;
      if (std::abs(a / b - 1.0) > rel) {
        ok = false;
        why += " " + tag + " row " + std::to_string(i + 1) + ": " + fmt(a) +
               " vs " + fmt(b) + ";";
      }
    }
  };
  match(i2, tp2a_dpm2_cache, 1e-3, "TP-2A DPM2-I");
  match(i4, tp2a_dpm4_cache, 1e-3, "TP-2A DPM4-I");
  match(c2, tp2c_dpm2_cache, 0.10, "TP-2C DPM2-I");
  match(c4, tp2c_dpm4_cache, 0.10, "TP-2C DPM4-I");
  report(6, ok, "implicit parity: TP-2A-I DPM2 " + row_summary(i2) +
                    "; TP-2C-I DPM2 " + row_summary(c2) + why);
}

// --- criterion 7: property suite -------------------------------------------

namespace props {

Eigen::VectorXd random_vector(Eigen::Index n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = dist(rng);
  return v;
}

struct Setup {
  Circle curve{{0, 0}, 1.0};
  AuxiliaryGrid grid;
  PointSets sets;
  std::unique_ptr<DiscreteOperator> op;
  std::unique_ptr<ApSolver> ap;
  double lambda, sigma;

  Setup(int n, StencilKind stencil, double lam, double sig)
      : grid(-1.6, 1.6, -1.6, 1.6, n, n), lambda(lam), sigma(sig) {
    sets = build_point_sets(grid, curve, true, stencil);
    op = std::make_unique<DiscreteOperator>(grid, stencil);
    ap = std::make_unique<ApSolver>(*op, sets);
    ap->set_regime(lam, sig);
  }
};

bool bep_equivalence_and_projection(std::string& why) {
  bool ok = true;
  for (auto stencil : {StencilKind::FivePoint, StencilKind::NinePoint}) {
    Setup s(24, stencil, 2.0, 40.0);
    const int n = s.grid.total_nodes();
    // dense oracle for the auxiliary problem
    Eigen::MatrixXd dense(s.op->system_matrix(s.lambda, s.sigma));
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(dense);
    const auto& nodes = s.op->interior_nodes();
    auto dense_solve = [&](const Eigen::VectorXd& q) {
      Eigen::VectorXd rhs(nodes.size());
      for (size_t i = 0; i < nodes.size(); ++i)
        rhs[static_cast<Eigen::Index>(i)] = q[nodes[i]];
      const Eigen::VectorXd sol = lu.solve(rhs);
      Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
      for (size_t i = 0; i < nodes.size(); ++i) out[nodes[i]] = sol[static_cast<Eigen::Index>(i)];
      return out;
    };

    Eigen::VectorXd F = Eigen::VectorXd::Zero(n);
    for (int node : s.sets.m_plus) {
      const Vec2 p = s.grid.node(node);
      F[node] = std::sin(2 * p.x) * p.y + 0.3;
    }
    Eigen::VectorXd q = F;
    const Eigen::VectorXd noise = random_vector(n, 11);
    for (int node : s.sets.m_minus) q[node] = noise[node];
    Eigen::VectorXd u = dense_solve(q);
    for (int node = 0; node < n; ++node)
      if (!s.sets.in_n_plus[node]) u[node] = 0.0;
    const Eigen::VectorXd v = s.ap->trace_gamma(u);
    const Eigen::VectorXd gf = s.ap->particular_solution(F);
    const double res =
        (v - s.ap->p_gamma(v) - s.ap->trace_gamma(gf)).lpNorm<Eigen::Infinity>();
    const double scale = std::max(1.0, v.lpNorm<Eigen::Infinity>());
    if (res > 1e-9 * scale) {
      ok = false;
      why += " BEP residual " + fmt(res) + ";";
    }

    const Eigen::VectorXd w =
        random_vector(static_cast<Eigen::Index>(s.sets.gamma.size()), 17);
    const Eigen::VectorXd pw = s.ap->p_gamma(w);
    const double proj = (s.ap->p_gamma(pw) - pw).norm();
    if (proj > 1e-9 * std::max(1.0, w.norm())) {
      ok = false;
      why += " projection defect " + fmt(proj) + ";";
    }
  }
  return ok;
}

bool stencil_slopes(std::string& why) {
  auto slope_of = [](StencilKind stencil) {
    auto f = [](double x, double y) {
      return std::sin(x) * std::exp(y) + x * x * x * std::pow(y, 4);
    };
    auto lap = [](double x, double y) {
      return 6 * x * std::pow(y, 4) + 12 * x * x * x * y * y;
    };
    std::vector<double> errs;
    for (int n : {17, 33, 65}) {
      AuxiliaryGrid g(-1, 1, -1, 1, n, n);
      DiscreteOperator op(g, stencil, /*corrected_ring=*/true);
      Eigen::VectorXd u(g.total_nodes());
      for (int k = 0; k < g.ny; ++k)
        for (int j = 0; j < g.nx; ++j) {
          const Vec2 p = g.node(j, k);
          u[g.id(j, k)] = f(p.x, p.y);
        }
      double e = 0;
      for (int j = 1; j <= g.nx - 2; ++j)
        for (int k = 1; k <= g.ny - 2; ++k) {
          const Vec2 p = g.node(j, k);
          e = std::max(e, std::abs(op.apply_laplacian(u, j, k) - lap(p.x, p.y)));
        }
      errs.push_back(e);
    }
    return std::log2(errs[1] / errs[2]);  // asymptotic pair
  };
  bool ok = true;
  const double s5 = slope_of(StencilKind::FivePoint);
  const double s9 = slope_of(StencilKind::NinePoint);
  if (std::abs(s5 - 2.0) > 0.25) {
    ok = false;
    why += " five-point slope " + fmt(s5) + ";";
  }
  if (std::abs(s9 - 4.0) > 0.25) {
    ok = false;
    why += " nine-point slope " + fmt(s9) + ";";
  }
  return ok;
}

bool extension_taylor(std::string& why) {
  auto problem = make_problem("tp1a");
  Circle circle({0, 0}, 1.0);
  const double t = 0.5;
  bool ok = true;
  for (int p : {2, 4}) {
    std::vector<double> errs;
    for (int lev = 0; lev < 3; ++lev) {
      const double h = 0.1 / (1 << lev);
      const double dt = 0.5 * h;
      TrigBasis basis(circle.total_length(), 41);
      const auto quad = circle.quadrature(basis.default_quadrature_nodes());
      std::vector<GammaInfo> gamma;
      for (int i = 0; i < 36; ++i) {
        GammaInfo gi;
        gi.theta = i * 0.17;
        gi.d = (i % 2 ? 1.0 : -1.0) * (0.3 + 0.07 * (i % 10)) * h;
        gi.kappa = 1.0;
        gi.normal = {std::cos(gi.theta), std::sin(gi.theta)};
        gi.projection = gi.normal;
        gi.position = gi.normal * (1.0 + gi.d);
        gamma.push_back(gi);
      }
      ExtensionContext ctx;
      ctx.taylor_order = p;
      ctx.bdf_order = p == 4 ? 4 : 2;
      ctx.dt = dt;
      ctx.lambda = 1.0;
      auto dcoef = [&](double tt) {
        return basis.project(
            [&](const CurvePoint& cp) {
              return problem->exact(1, cp.position.x, cp.position.y, tt);
            },
            quad);
      };
      auto ncoef = [&](double tt) {
        return basis.project(
            [&](const CurvePoint& cp) {
              return problem->exact_normal_derivative(1, cp.position,
                                                      cp.unit_normal, tt);
            },
            quad);
      };
      const int dlev = p == 4 ? 5 : 2, nlev = p == 4 ? 4 : 2;
      for (int m = 0; m < dlev; ++m)
        ctx.dirichlet_history.push_back(dcoef(t - (m + 1) * dt));
      for (int m = 0; m < nlev; ++m)
        ctx.neumann_history.push_back(ncoef(t - (m + 1) * dt));
      const Eigen::Index ng = static_cast<Eigen::Index>(gamma.size());
      ctx.f.resize(ng);
      ctx.f_n.resize(ng);
      ctx.f_nn.resize(ng);
      ctx.f_thth.resize(ng);
      ctx.f_t.resize(ng);
      for (Eigen::Index i = 0; i < ng; ++i) {
        const auto& gi = gamma[static_cast<size_t>(i)];
        const ForcingEval fe =
            problem->forcing_eval(1, gi.projection.x, gi.projection.y, t);
        const Vec2 nrm = gi.normal, tau = nrm.perp();
        ctx.f[i] = fe.f;
        ctx.f_n[i] = fe.fx * nrm.x + fe.fy * nrm.y;
        ctx.f_nn[i] = fe.fxx * nrm.x * nrm.x + 2 * fe.fxy * nrm.x * nrm.y +
                      fe.fyy * nrm.y * nrm.y;
        ctx.f_thth[i] = fe.fxx * tau.x * tau.x + 2 * fe.fxy * tau.x * tau.y +
                        fe.fyy * tau.y * tau.y -
                        (fe.fx * nrm.x + fe.fy * nrm.y);
        ctx.f_t[i] = fe.ft;
      }
      const ExtensionAssembly ext = build_extension(gamma, basis, ctx);
      Eigen::VectorXd c(82);
      c << dcoef(t), ncoef(t);
      const Eigen::VectorXd v = ext.extend(c);
      double err = 0;
      for (Eigen::Index i = 0; i < ng; ++i) {
        const Vec2 pos = gamma[static_cast<size_t>(i)].position;
        err = std::max(err, std::abs(v[i] - problem->exact(1, pos.x, pos.y, t)));
      }
      errs.push_back(err);
    }
    const double slope = std::log2(errs[0] / errs[2]) / 2.0;
    if (std::abs(slope - (p + 1.0)) > 0.4) {
      ok = false;
      why += " p=" + std::to_string(p) + " slope " + fmt(slope) + ";";
    }
  }
  return ok;
}

bool closure_regression(std::string& why) {
  SolverConfig cfg;
  cfg.problem = "tp1a";
  cfg.order = 2;
  cfg.grid_n = 32;
  cfg.final_time = 0.5;
  const RunResult a = run_solver(cfg);
  cfg.closure_value = 0.37;
  const RunResult b = run_solver(cfg);
  if (std::abs(a.max_error - b.max_error) >
      0.5 * std::max(a.max_error, b.max_error)) {
    why += " closure changed the error from " + fmt(a.max_error) + " to " +
           fmt(b.max_error) + ";";
    return false;
  }
  return true;
}

bool affine_exactness(std::string& why) {
  TrigBasis basis(2 * 3.14159265358979323846, 11);
  std::vector<GammaInfo> gamma;
  for (int i = 0; i < 6; ++i) {
    GammaInfo gi;
    gi.theta = 0.3 + i;
    gi.d = 0.05 * ((i % 3) - 1);
    gi.kappa = 1.0;
    gi.normal = {std::cos(gi.theta), std::sin(gi.theta)};
    gamma.push_back(gi);
  }
  ExtensionContext ctx;
  ctx.taylor_order = 4;
  ctx.bdf_order = 4;
  ctx.dt = 0.02;
  ctx.lambda = 1.4;
  for (int m = 0; m < 5; ++m)
    ctx.dirichlet_history.push_back(random_vector(11, 900 + m));
  for (int m = 0; m < 4; ++m)
    ctx.neumann_history.push_back(random_vector(11, 910 + m));
  ctx.f = random_vector(6, 920);
  ctx.f_n = random_vector(6, 921);
  ctx.f_nn = random_vector(6, 922);
  ctx.f_thth = random_vector(6, 923);
  ctx.f_t = random_vector(6, 924);
  const ExtensionAssembly ext = build_extension(gamma, basis, ctx);
  const Eigen::VectorXd c = random_vector(22, 930);
  const double defect =
      (ext.extend(c) - ext.history - ext.coeff * c).lpNorm<Eigen::Infinity>();
  if (defect > 1e-13) {
    why += " affine defect " + fmt(defect) + ";";
    return false;
  }
  return true;
}

bool jumps_and_forcing(std::string& why) {
  Circle circle({0, 0}, 1.0);
  bool ok = true;
  // closed-form jump for tp2c
  auto tp2c = make_problem("tp2c");
  for (double th : {0.3, 2.1, 4.4}) {
    const CurvePoint cp = circle.point_at(th);
    const JumpValues j = tp2c->jumps(cp, 0.7);
    const double expect = -1000.0 * std::sin(7.0) * std::pow(std::cos(th), 4) *
                          std::pow(std::sin(th), 5);
    if (std::abs(j.mu1 - expect) > 1e-12 * std::max(1.0, std::abs(expect))) {
      ok = false;
      why += " tp2c mu1 mismatch at theta " + fmt(th) + ";";
    }
  }
  // finite-difference probe of the forcing for every problem
  for (const char* id : {"tp1a", "tp3a", "tp2a", "tp2b", "tp2c"}) {
    auto p = make_problem(id);
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> pos(-1.3, 1.3), tim(0.1, 0.9);
    const bool highfreq = std::string(id) == "tp2b";
    const double ds = highfreq ? 4e-3 : 1e-2;
    const double tol = highfreq ? 1e-5 : 1e-6;
    for (int side = 1; side <= p->num_sides(); ++side) {
      for (int trial = 0; trial < 100; ++trial) {
        const double x = pos(rng), y = pos(rng), t = tim(rng);
        auto u_of = [&](double xx, double yy, double tt) {
          return p->exact(side, xx, yy, tt);
        };
        auto d2 = [&](const std::function<double(double)>& f, double v,
                      double d) {
          return (2 * f(v - 3 * d) - 27 * f(v - 2 * d) + 270 * f(v - d) -
                  490 * f(v) + 270 * f(v + d) - 27 * f(v + 2 * d) +
                  2 * f(v + 3 * d)) /
                 (180 * d * d);
        };
        auto d1 = [&](const std::function<double(double)>& f, double v,
                      double d) {
          return (-f(v - 3 * d) + 9 * f(v - 2 * d) - 45 * f(v - d) +
                  45 * f(v + d) - 9 * f(v + 2 * d) + f(v + 3 * d)) /
                 (60 * d);
        };
        const double lap =
            d2([&](double xx) { return u_of(xx, y, t); }, x, ds) +
            d2([&](double yy) { return u_of(x, yy, t); }, y, ds);
        const double ut = d1([&](double tt) { return u_of(x, y, tt); }, t, 1e-2);
        const double f = p->forcing(side, x, y, t);
        const double scale =
            std::max({1.0, std::abs(f), std::abs(p->lambda(side, t) * lap)});
        if (std::abs(f - (ut - p->lambda(side, t) * lap)) > tol * scale) {
          ok = false;
          why += std::string(" forcing probe failed for ") + id + ";";
          break;
        }
      }
    }
  }
  return ok;
}

}  // namespace props

static void criterion_7() {
  const auto t0 = std::chrono::steady_clock::now();
  std::string why;
  bool ok = true;
  ok &= props::bep_equivalence_and_projection(why);
  ok &= props::stencil_slopes(why);
  ok &= props::extension_taylor(why);
  ok &= props::closure_regression(why);
  ok &= props::affine_exactness(why);
  ok &= props::jumps_and_forcing(why);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > 120.0) {
    ok = false;
    why += " property suite took " + fmt(secs) + " s (> 120);";
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "property suite in %.1f s", secs);
  report(7, ok, std::string(buf) + why);
}

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  auto wanted = [&](int k) {
    return selected.empty() ||
           std::find(selected.begin(), selected.end(), k) != selected.end();
  };

  // criteria 2 and 6 compare against tables produced by 1, 3, and 5
  if (wanted(1) || wanted(2)) criterion_1();
  if (wanted(2)) criterion_2();
  if (wanted(3) || wanted(6)) criterion_3();
  if (wanted(4)) criterion_4();
  if (wanted(5) || wanted(6)) criterion_5();
  if (wanted(6)) criterion_6();
  if (wanted(7)) criterion_7();

  if (g_failures == 0)
    std::printf("acceptance: all criteria passed\n");
  else
    std::printf("acceptance: %d criterion(s) failed\n", g_failures);
  return g_failures;
}
