#pragma once

#include <deque>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dpm/auxiliary_problem.hpp"
#include "dpm/basis.hpp"
#include "dpm/bep_system.hpp"
#include "dpm/extension.hpp"
#include "dpm/problems.hpp"

namespace dpm {

enum class GeometryMode { Explicit, Implicit };
enum class StartupMode { Exact, Bootstrap };

struct SolverConfig {
  std::string problem = "tp1a";
  int order = 2;               // 2 (five-point, BDF2) or 4 (nine-point, BDF4)
  int grid_n = 100;            // nodes per axis of the outer auxiliary grid
  double dt_factor = 0.5;      // Δt target = dt_factor · h
  double final_time = 1.0;
  GeometryMode geometry = GeometryMode::Explicit;
  int basis_modes = 0;         // 0 → per-problem default
  int independent_side = 0;    // 0 → per-problem default
  StartupMode startup = StartupMode::Exact;
  bool tp3a_caption_lambda = false;
  double closure_value = 0.0;  // constant exterior closure of the AP
  std::string level_set_source = "unit-circle";
  int level_set_samples = 441;
  bool collect_fields = false;
  bool collect_step_errors = true;
  std::string dump_bep_prefix;  // write BEP blocks and residuals when set
};

struct StepErrorRecord {
  int step = 0;
  double t = 0;
  double max_error = 0;
};

struct RunResult {
  double max_error = 0;
  std::vector<StepErrorRecord> per_step;
  long long dof_total = 0;
  long long dof_active = 0;
  int steps = 0;
  double dt = 0;
  double h = 0;
  double runtime_seconds = 0;
  double trailing_coefficient_ratio = 0;

  struct FieldRow {
    double x, y, numeric, exact, error;
  };
  std::vector<FieldRow> final_fields;
};

/// One subdomain's immersed-grid pipeline and per-step state.
struct SubdomainState {
  int side = 1;
  bool physical_ring = false;  // grid edge carries the outer Dirichlet data
  AuxiliaryGrid grid;
  PointSets sets;
  std::unique_ptr<DiscreteOperator> op;
  std::unique_ptr<ApSolver> ap;

  BdfHistory grid_history{4};
  std::deque<Eigen::VectorXd> d_hist, n_hist;

  ExtensionAssembly ext;
  Eigen::MatrixXd bep_block;         // (I − P_γ)·Ex columns for the regime
  Eigen::VectorXd u_current;         // latest solution on the lattice
  double last_interior_residual = 0;
};

/// Orchestrates the per-step pipeline: particular solution, boundary system,
/// extension of the solved Cauchy data, and the discrete generalized Green's
/// formula u = P_{N+} u_γ + G F.
class Solver {
 public:
  Solver(const SolverConfig& config, std::shared_ptr<const TestProblem> problem);

  void startup();
  void step();
  RunResult run();

  double time() const { return t_; }
  double dt() const { return dt_; }
  double h() const { return h_; }
  int step_index() const { return step_index_; }
  int n_steps() const { return n_steps_; }
  int basis_size() const { return basis_->size(); }
  const TrigBasis& basis() const { return *basis_; }
  const Curve& curve() const { return *curve_; }
  const SubdomainState& subdomain(int i) const { return *subs_[i]; }
  int num_subdomains() const { return static_cast<int>(subs_.size()); }
  double last_step_error() const { return last_step_error_; }
  double max_error() const { return max_error_; }
  /// Relative least-squares residual of the latest boundary solve.
  double last_bep_residual() const { return last_bep_residual_; }
  double trailing_coefficient_ratio() const { return trailing_ratio_; }

 private:
  void build_geometry_and_grids();
  int effective_bdf_order() const;
  Eigen::VectorXd exact_lattice(const SubdomainState& s, double t) const;
  Eigen::VectorXd forcing_lattice(const SubdomainState& s, double t) const;
  Eigen::VectorXd physical_rhs(SubdomainState& s, double t_next,
                               int order_eff) const;
  ExtensionContext make_context(const SubdomainState& s, double lambda,
                                int order_eff, double t_next) const;
  Eigen::VectorXd project_trace(
      const std::function<double(const CurvePoint&)>& f) const;
  void rotate_histories(SubdomainState& s, const Eigen::VectorXd& u_new,
                        const Eigen::VectorXd& c0, const Eigen::VectorXd& c1);
  double side_error(const SubdomainState& s, double t) const;
  void note_trailing(const Eigen::VectorXd& c0, const Eigen::VectorXd& c1);

  SolverConfig config_;
  std::shared_ptr<const TestProblem> problem_;
  std::shared_ptr<Curve> curve_;
  std::unique_ptr<TrigBasis> basis_;
  std::vector<QuadratureNode> quad_;
  std::vector<std::unique_ptr<SubdomainState>> subs_;

  std::optional<SingleDomainBep> single_bep_;
  std::optional<CompositeBep> composite_bep_;
  int independent_side_ = 2;

  double t_ = 0, dt_ = 0, h_ = 0;
  int step_index_ = 0, n_steps_ = 0;
  double last_step_error_ = 0, max_error_ = 0, trailing_ratio_ = 0;
  double last_bep_residual_ = 0;
};

/// Convenience: configure, run to the final time, and collect the results.
RunResult run_solver(const SolverConfig& config,
                     std::shared_ptr<const TestProblem> problem = nullptr);

}  // namespace dpm
