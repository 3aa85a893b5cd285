#include "dpm/timestepper.hpp"

#include <chrono>
#include <cmath>
#include <fstream>

namespace {

void dump_matrix_csv(const std::string& path, const Eigen::MatrixXd& m) {
  std::ofstream out(path);
  if (!out.good()) return;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      out << m(r, c) << (c + 1 == m.cols() ? '\n' : ',');
  }
}

}  // namespace

namespace dpm {

Solver::Solver(const SolverConfig& config,
               std::shared_ptr<const TestProblem> problem)
    : config_(config), problem_(std::move(problem)) {
  DPM_REQUIRE(config_.order == 2 || config_.order == 4,
              "method order must be 2 or 4");
  DPM_REQUIRE(config_.dt_factor > 0 && config_.final_time > 0,
              "time stepping parameters must be positive");
  if (!problem_) problem_ = make_problem(config_.problem, config_.tp3a_caption_lambda);
  build_geometry_and_grids();

  int modes = config_.basis_modes;
  if (modes <= 0) {
    // default truncation, capped by what the discrete grid boundary can
    // resolve on coarse grids (explicit --basis-modes bypasses the cap)
    size_t gamma_min = subs_[0]->sets.gamma.size();
    for (auto& s : subs_) gamma_min = std::min(gamma_min, s->sets.gamma.size());
    int cap = static_cast<int>(gamma_min) / 3;
    if (cap % 2 == 0) --cap;
    cap = std::max(cap, 5);
    modes = std::min(problem_->default_basis_modes(), cap);
  }
  basis_ = std::make_unique<TrigBasis>(curve_->total_length(), modes);
  quad_ = curve_->quadrature(basis_->default_quadrature_nodes());
  independent_side_ = config_.independent_side > 0
                          ? config_.independent_side
                          : problem_->default_independent_side();
}

void Solver::build_geometry_and_grids() {
  const StencilKind stencil =
      config_.order == 2 ? StencilKind::FivePoint : StencilKind::NinePoint;
  if (config_.geometry == GeometryMode::Explicit)
    curve_ = std::make_shared<Circle>(Vec2{0.0, 0.0}, 1.0);
  else
    curve_ = make_level_set_curve(config_.level_set_source, config_.order,
                                  config_.level_set_samples);

  const int n = config_.grid_n;
  if (problem_->kind() == DomainKind::Single) {
    auto s = std::make_unique<SubdomainState>();
    s->side = 1;
    s->grid = AuxiliaryGrid(-2.0, 2.0, -2.0, 2.0, n, n);
    s->sets = build_point_sets(s->grid, *curve_, true, stencil);
    s->op = std::make_unique<DiscreteOperator>(s->grid, stencil, false);
    s->ap = std::make_unique<ApSolver>(*s->op, s->sets);
    s->ap->set_closure_value(config_.closure_value);
    subs_.push_back(std::move(s));
    h_ = subs_[0]->grid.h();
  } else {
    auto s1 = std::make_unique<SubdomainState>();
    s1->side = 1;
    s1->physical_ring = true;  // ∂Ω = edge of this grid, Dirichlet data there
    s1->grid = AuxiliaryGrid(-2.0, 2.0, -2.0, 2.0, n, n);
    const double h = s1->grid.h();
    s1->sets = build_point_sets(s1->grid, *curve_, false, stencil);
    s1->op = std::make_unique<DiscreteOperator>(s1->grid, stencil, true);
    s1->ap = std::make_unique<ApSolver>(*s1->op, s1->sets);
    s1->ap->set_closure_value(config_.closure_value);

    // inner auxiliary square: smallest grid-compatible square covering
    // [−1.2, 1.2]² with the same spacing; coarse grids get extra clearance
    // so the discrete grid boundary keeps its distance from the edge
    const double want = std::max(1.2, 1.0 + 5.0 * h);
    const int cells2 = static_cast<int>(std::ceil(2.0 * want / h - 1e-12));
    const double half = 0.5 * cells2 * h;
    auto s2 = std::make_unique<SubdomainState>();
    s2->side = 2;
    s2->grid = AuxiliaryGrid(-half, half, -half, half, cells2 + 1, cells2 + 1);
    s2->sets = build_point_sets(s2->grid, *curve_, true, stencil);
    s2->op = std::make_unique<DiscreteOperator>(s2->grid, stencil, false);
    s2->ap = std::make_unique<ApSolver>(*s2->op, s2->sets);
    s2->ap->set_closure_value(config_.closure_value);

    h_ = h;
    subs_.push_back(std::move(s1));
    subs_.push_back(std::move(s2));
  }

  n_steps_ = static_cast<int>(
      std::ceil(config_.final_time / (config_.dt_factor * h_) - 1e-12));
  DPM_REQUIRE(n_steps_ >= 1, "final time shorter than one step");
  dt_ = config_.final_time / n_steps_;

  const int cap = config_.order;
  for (auto& s : subs_) s->grid_history = BdfHistory(cap);
}

Eigen::VectorXd Solver::exact_lattice(const SubdomainState& s, double t) const {
  const auto& g = s.grid;
  Eigen::VectorXd u(g.total_nodes());
  for (int k = 0; k < g.ny; ++k)
    for (int j = 0; j < g.nx; ++j) {
      const Vec2 p = g.node(j, k);
      u[g.id(j, k)] = problem_->exact(s.side, p.x, p.y, t);
    }
  return u;
}

Eigen::VectorXd Solver::forcing_lattice(const SubdomainState& s, double t) const {
  const auto& g = s.grid;
  Eigen::VectorXd f = Eigen::VectorXd::Zero(g.total_nodes());
  for (int n : s.sets.m_plus) {
    const Vec2 p = g.node(n);
    f[n] = problem_->forcing(s.side, p.x, p.y, t);
  }
  return f;
}

Eigen::VectorXd Solver::project_trace(
    const std::function<double(const CurvePoint&)>& f) const {
  return basis_->project(f, quad_);
}

void Solver::startup() {
  t_ = 0.0;
  step_index_ = 0;
  max_error_ = 0.0;
  const int order = config_.order;
  const bool exact_start = config_.startup == StartupMode::Exact;
  const int grid_levels = exact_start ? order : 1;
  const int trace_levels_d = exact_start ? (order == 4 ? 5 : 2) : 1;
  const int trace_levels_n = exact_start ? (order == 4 ? 4 : 2) : 1;

  for (auto& sp : subs_) {
    SubdomainState& s = *sp;
    s.grid_history.clear();
    s.d_hist.clear();
    s.n_hist.clear();
    for (int m = grid_levels - 1; m >= 0; --m)
      s.grid_history.push(exact_lattice(s, -m * dt_));
    for (int m = 0; m < std::max(trace_levels_d, trace_levels_n); ++m) {
      const double tm = -m * dt_;
      if (m < trace_levels_d)
        s.d_hist.push_back(project_trace([&](const CurvePoint& cp) {
          return problem_->exact(s.side, cp.position.x, cp.position.y, tm);
        }));
      if (m < trace_levels_n)
        s.n_hist.push_back(project_trace([&](const CurvePoint& cp) {
          return problem_->exact_normal_derivative(s.side, cp.position,
                                                   cp.unit_normal, tm);
        }));
    }
    s.u_current = s.grid_history[0];
  }
}

int Solver::effective_bdf_order() const {
  return std::min(config_.order, subs_[0]->grid_history.size());
}

Eigen::VectorXd Solver::physical_rhs(SubdomainState& s, double t_next,
                                     int order_eff) const {
  Eigen::VectorXd F = bdf_rhs(s.grid_history, forcing_lattice(s, t_next),
                              order_eff, dt_, s.sets.m_plus,
                              s.grid.total_nodes());
  if (s.physical_ring) {
    const auto& g = s.grid;
    Eigen::VectorXd psi = Eigen::VectorXd::Zero(g.total_nodes());
    for (int j = 0; j < g.nx; ++j)
      for (int k = 0; k < g.ny; ++k)
        if (g.is_ring(j, k)) {
          const Vec2 p = g.node(j, k);
          psi[g.id(j, k)] = problem_->exact(s.side, p.x, p.y, t_next);
        }
    const Eigen::VectorXd fold =
        problem_->lambda(s.side, t_next) * (s.op->delta() * psi);
    for (int n : s.sets.m_plus) F[n] -= fold[n];
  }
  return F;
}

ExtensionContext Solver::make_context(const SubdomainState& s, double lambda,
                                      int order_eff, double t_next) const {
  ExtensionContext ctx;
  ctx.taylor_order = config_.order;
  ctx.bdf_order = order_eff;
  ctx.dt = dt_;
  ctx.lambda = lambda;
  ctx.lambda_dot = problem_->lambda_dot(s.side, t_next);
  ctx.dirichlet_history.assign(s.d_hist.begin(), s.d_hist.end());
  ctx.neumann_history.assign(s.n_hist.begin(), s.n_hist.end());

  const auto& gi = s.sets.gamma_info;
  const Eigen::Index ng = static_cast<Eigen::Index>(gi.size());
  ctx.f.resize(ng);
  if (config_.order == 4) {
    ctx.f_n.resize(ng);
    ctx.f_nn.resize(ng);
    ctx.f_thth.resize(ng);
    ctx.f_t.resize(ng);
  }
  for (Eigen::Index i = 0; i < ng; ++i) {
    const GammaInfo& g = gi[static_cast<size_t>(i)];
    const ForcingEval fe =
        problem_->forcing_eval(s.side, g.projection.x, g.projection.y, t_next);
    ctx.f[i] = fe.f;
    if (config_.order == 4) {
      const Vec2 n = g.normal;
      const Vec2 tau = n.perp();  // counterclockwise unit tangent
      ctx.f_n[i] = fe.fx * n.x + fe.fy * n.y;
      ctx.f_nn[i] = fe.fxx * n.x * n.x + 2.0 * fe.fxy * n.x * n.y +
                    fe.fyy * n.y * n.y;
      // arclength second derivative of the trace: τᵀ(∇²f)τ − κ ∇f·n
      ctx.f_thth[i] = fe.fxx * tau.x * tau.x + 2.0 * fe.fxy * tau.x * tau.y +
                      fe.fyy * tau.y * tau.y -
                      g.kappa * (fe.fx * n.x + fe.fy * n.y);
      ctx.f_t[i] = fe.ft;
    }
  }
  return ctx;
}

void Solver::note_trailing(const Eigen::VectorXd& c0, const Eigen::VectorXd& c1) {
  auto ratio = [](const Eigen::VectorXd& c) {
    if (c.size() < 4) return 0.0;
    const double cmax = c.cwiseAbs().maxCoeff();
    if (cmax == 0.0) return 0.0;
    return c.tail(2).cwiseAbs().maxCoeff() / cmax;
  };
  trailing_ratio_ = std::max({trailing_ratio_, ratio(c0), ratio(c1)});
}

void Solver::rotate_histories(SubdomainState& s, const Eigen::VectorXd& u_new,
                              const Eigen::VectorXd& c0,
                              const Eigen::VectorXd& c1) {
  s.grid_history.push(u_new);
  s.u_current = u_new;
  const size_t cap_d = config_.order == 4 ? 5 : 2;
  const size_t cap_n = config_.order == 4 ? 4 : 2;
  s.d_hist.push_front(c0);
  s.n_hist.push_front(c1);
  while (s.d_hist.size() > cap_d) s.d_hist.pop_back();
  while (s.n_hist.size() > cap_n) s.n_hist.pop_back();
}

double Solver::side_error(const SubdomainState& s, double t) const {
  double e = 0.0;
  for (int n : s.sets.m_plus) {
    const Vec2 p = s.grid.node(n);
    e = std::max(e, std::abs(s.u_current[n] - problem_->exact(s.side, p.x, p.y, t)));
  }
  return e;
}

void Solver::step() {
  const double t_next = t_ + dt_;
  const int order_eff = effective_bdf_order();
  const int n0 = basis_->size(), n1 = basis_->size();
  const bool single = problem_->kind() == DomainKind::Single;

  struct StepData {
    Eigen::VectorXd F_tilde, gf, rhs;
    double lambda = 1.0;
  };
  std::vector<StepData> data(subs_.size());

  bool regime_changed = false;
  for (size_t i = 0; i < subs_.size(); ++i) {
    SubdomainState& s = *subs_[i];
    StepData& d = data[i];
    d.lambda = problem_->lambda(s.side, t_next);
    const double sigma = sigma_of(order_eff, dt_);
    if (s.ap->set_regime(d.lambda, sigma)) regime_changed = true;
    s.ext = build_extension(s.sets.gamma_info, *basis_,
                            make_context(s, d.lambda, order_eff, t_next));
    d.F_tilde = physical_rhs(s, t_next, order_eff);
  }

  if (single) {
    SubdomainState& s = *subs_[0];
    StepData& d = data[0];
    if (regime_changed || !single_bep_) {
      const Eigen::MatrixXd neumann_cols = s.ext.coeff.rightCols(n1);
      single_bep_.emplace(s.ap->bep_image(neumann_cols));
      if (!config_.dump_bep_prefix.empty())
        dump_matrix_csv(config_.dump_bep_prefix + ".A1.csv",
                        single_bep_->ls().matrix());
    }
    // Dirichlet coefficients fixed by the boundary data ψ(·, t^{i+1})
    const Eigen::VectorXd c0 = project_trace([&](const CurvePoint& cp) {
      return problem_->exact(s.side, cp.position.x, cp.position.y, t_next);
    });
    const Eigen::VectorXd known_gamma =
        s.ext.coeff.leftCols(n0) * c0 + s.ext.history;

    Eigen::MatrixXd q(s.grid.total_nodes(), 2);
    q.col(0).setZero();
    for (int n : s.sets.m_plus) q(n, 0) = d.F_tilde[n];
    q.col(1) = s.ap->density_rhs(known_gamma);
    const Eigen::MatrixXd sol = s.ap->solve_ap(q);
    d.gf = sol.col(0);
    const Eigen::VectorXd rhs =
        s.ap->trace_gamma(d.gf) - s.ap->trace_gamma(sol.col(1));

    const Eigen::VectorXd c1 = single_bep_->solve(rhs);
    last_bep_residual_ = single_bep_->ls().residual(c1, rhs) /
                         std::max(rhs.norm(), 1e-300);
    note_trailing(c0, c1);
    const Eigen::VectorXd u_gamma = known_gamma + s.ext.coeff.rightCols(n1) * c1;

    const Eigen::VectorXd pot = s.ap->solve_ap(s.ap->density_rhs(u_gamma));
    Eigen::VectorXd u_new = s.ap->zero_extend(u_gamma) - pot + d.gf;
    for (int n = 0; n < u_new.size(); ++n)
      if (!s.sets.in_n_plus[n]) u_new[n] = 0.0;

    {  // interior residual of the generalized Green's formula output
      const Eigen::VectorXd Lu = d.lambda * (s.op->delta() * u_new) -
                                 sigma_of(order_eff, dt_) * u_new;
      double num = 0, den = 0;
      for (int n : s.sets.m_plus) {
        num = std::max(num, std::abs(Lu[n] - d.F_tilde[n]));
        den = std::max(den, std::abs(d.F_tilde[n]));
      }
      s.last_interior_residual = num / std::max(den, 1e-300);
    }
    rotate_histories(s, u_new, c0, c1);
  } else {
    // composite: both subdomains share the basis and the interface unknowns
    for (size_t i = 0; i < subs_.size(); ++i) {
      SubdomainState& s = *subs_[i];
      StepData& d = data[i];
      if (regime_changed || s.bep_block.size() == 0) {
        s.bep_block = s.ap->bep_image(s.ext.coeff);
        if (!config_.dump_bep_prefix.empty())
          dump_matrix_csv(config_.dump_bep_prefix + ".A" +
                              std::to_string(s.side) + ".csv",
                          s.bep_block);
      }
      Eigen::MatrixXd q(s.grid.total_nodes(), 2);
      q.col(0).setZero();
      for (int n : s.sets.m_plus) q(n, 0) = d.F_tilde[n];
      q.col(1) = s.ap->density_rhs(s.ext.history);
      const Eigen::MatrixXd sol = s.ap->solve_ap(q);
      d.gf = sol.col(0);
      d.rhs = s.ap->trace_gamma(d.gf) - s.ap->trace_gamma(sol.col(1));
    }
    if (regime_changed || !composite_bep_) {
      composite_bep_.emplace(subs_[0]->bep_block, subs_[1]->bep_block,
                             independent_side_, data[0].lambda, data[1].lambda,
                             n0, n1);
    }
    const Eigen::VectorXd m1 = project_trace([&](const CurvePoint& cp) {
      return problem_->jumps(cp, t_next).mu1;
    });
    const Eigen::VectorXd m2 = project_trace([&](const CurvePoint& cp) {
      return problem_->jumps(cp, t_next).mu2;
    });
    const Eigen::VectorXd c_indep =
        composite_bep_->solve_independent(data[0].rhs, data[1].rhs, m1, m2);
    const auto [c1_pair, c2_pair] = composite_bep_->couple(c_indep, m1, m2);
    {
      Eigen::VectorXd full1(n0 + n1), full2(n0 + n1);
      full1 << c1_pair.dirichlet, c1_pair.neumann;
      full2 << c2_pair.dirichlet, c2_pair.neumann;
      const double num =
          std::sqrt((subs_[0]->bep_block * full1 - data[0].rhs).squaredNorm() +
                    (subs_[1]->bep_block * full2 - data[1].rhs).squaredNorm());
      const double den = std::sqrt(data[0].rhs.squaredNorm() +
                                   data[1].rhs.squaredNorm());
      last_bep_residual_ = num / std::max(den, 1e-300);
    }

    for (size_t i = 0; i < subs_.size(); ++i) {
      SubdomainState& s = *subs_[i];
      StepData& d = data[i];
      const CauchyCoefficients& c = (s.side == 1) ? c1_pair : c2_pair;
      note_trailing(c.dirichlet, c.neumann);
      const Eigen::VectorXd u_gamma = s.ext.extend(c);
      const Eigen::VectorXd pot = s.ap->solve_ap(s.ap->density_rhs(u_gamma));
      Eigen::VectorXd u_new = s.ap->zero_extend(u_gamma) - pot + d.gf;
      for (int n = 0; n < u_new.size(); ++n)
        if (!s.sets.in_n_plus[n]) u_new[n] = 0.0;

      const Eigen::VectorXd Lu = d.lambda * (s.op->delta() * u_new) -
                                 sigma_of(order_eff, dt_) * u_new;
      double num = 0, den = 0;
      for (int n : s.sets.m_plus) {
        num = std::max(num, std::abs(Lu[n] - d.F_tilde[n]));
        den = std::max(den, std::abs(d.F_tilde[n]));
      }
      s.last_interior_residual = num / std::max(den, 1e-300);
      rotate_histories(s, u_new, c.dirichlet, c.neumann);
    }
  }

  t_ = t_next;
  ++step_index_;
  if (!config_.dump_bep_prefix.empty()) {
    std::ofstream out(config_.dump_bep_prefix + ".residuals.csv",
                      step_index_ == 1 ? std::ios::trunc : std::ios::app);
    if (step_index_ == 1) out << "step,t,bep_residual\n";
    out << step_index_ << "," << t_ << "," << last_bep_residual_ << "\n";
  }
  double e = 0.0;
  for (auto& s : subs_) e = std::max(e, side_error(*s, t_));
  last_step_error_ = e;
  max_error_ = std::max(max_error_, e);
}

RunResult Solver::run() {
  const auto t0 = std::chrono::steady_clock::now();
  startup();
  RunResult out;
  out.dt = dt_;
  out.h = h_;
  out.steps = n_steps_;
  out.dof_total = static_cast<long long>(subs_[0]->grid.total_nodes());
  out.dof_active = 0;
  for (auto& s : subs_) out.dof_active += static_cast<long long>(s->sets.m_plus.size());

  for (int i = 0; i < n_steps_; ++i) {
    step();
    if (config_.collect_step_errors)
      out.per_step.push_back({step_index_, t_, last_step_error_});
  }
  out.max_error = max_error_;
  out.trailing_coefficient_ratio = trailing_ratio_;

  if (config_.collect_fields) {
    for (auto& sp : subs_) {
      const SubdomainState& s = *sp;
      for (int n : s.sets.m_plus) {
        const Vec2 p = s.grid.node(n);
        const double ex = problem_->exact(s.side, p.x, p.y, t_);
        out.final_fields.push_back(
            {p.x, p.y, s.u_current[n], ex, std::abs(s.u_current[n] - ex)});
      }
    }
  }
  out.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

RunResult run_solver(const SolverConfig& config,
                     std::shared_ptr<const TestProblem> problem) {
  Solver solver(config, problem ? std::move(problem)
                                : make_problem(config.problem,
                                               config.tp3a_caption_lambda));
  return solver.run();
}

}  // namespace dpm
