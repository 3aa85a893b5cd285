#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "dpm/bench.hpp"

namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out.good()) dpm::fail("cannot open output file: " + path);
  out << text;
}

void dump_fields_csv(const std::string& path, const dpm::RunResult& run) {
  std::ofstream out(path);
  if (!out.good()) dpm::fail("cannot open field dump file: " + path);
  out << "x,y,numeric,exact,error\n";
  char buf[160];
  for (const auto& r : run.final_fields) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g\n", r.x, r.y,
                  r.numeric, r.exact, r.error);
    out << buf;
  }
}

void dump_error_log_csv(const std::string& path, const dpm::RunResult& run) {
  std::ofstream out(path);
  if (!out.good()) dpm::fail("cannot open error log file: " + path);
  out << "step,t,max_error\n";
  char buf[96];
  for (const auto& r : run.per_step) {
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g\n", r.step, r.t, r.max_error);
    out << buf;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Difference-potentials benchmark solver for parabolic problems "
               "on circular and composite domains"};
  app.set_config("--config", "",
                 "flat key=value config file mirroring the flags (bare keys "
                 "under a [run] section, or run.<flag>=value)");
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "run a refinement sequence");

  std::string problem = "tp1a";
  int order = 2;
  std::vector<int> grids{100, 200, 400};
  std::string geometry = "explicit";
  std::string out_path, format = "csv", rate_convention = "sqrt-dof";
  std::string error_log, dump_points_prefix, dump_bep_prefix;
  std::string level_set = "unit-circle";
  std::string startup = "exact", tp3a_lambda = "body";
  int basis_modes = 0, independent_side = 0, level_set_samples = 441;
  double dt_factor = 0.5, final_time = 1.0, closure_value = 0.0;
  bool dump_fields = false, check = false, quiet = false;

  run_cmd->add_option("--problem", problem, "tp1a|tp3a|tp2a|tp2b|tp2c")
      ->check(CLI::IsMember({"tp1a", "tp3a", "tp2a", "tp2b", "tp2c"}));
  run_cmd->add_option("--order", order, "method order")->check(CLI::IsMember({2, 4}));
  run_cmd->add_option("--grids", grids, "nodes per axis, e.g. 100,200,400")
      ->delimiter(',');
  run_cmd->add_option("--geometry", geometry, "explicit|implicit")
      ->check(CLI::IsMember({"explicit", "implicit"}));
  run_cmd->add_option("--out", out_path, "write the table to this path");
  run_cmd->add_option("--basis-modes", basis_modes,
                      "number of boundary basis functions (0 = per-problem default)");
  run_cmd->add_option("--independent-side", independent_side,
                      "independent interface side (0 = per-problem default)")
      ->check(CLI::IsMember({0, 1, 2}));
  run_cmd->add_option("--dt-factor", dt_factor, "time step = factor * h");
  run_cmd->add_option("--final-time", final_time, "final time T");
  run_cmd->add_option("--format", format, "csv|markdown")
      ->check(CLI::IsMember({"csv", "markdown"}));
  run_cmd->add_flag("--dump-fields", dump_fields,
                    "write <out>.fields_<dof>.csv at the final time");
  run_cmd->add_option("--error-log", error_log,
                      "write per-step (step,t,max_error) CSV to this path prefix");
  run_cmd->add_option("--dump-bep", dump_bep_prefix,
                      "write BEP blocks and per-step residuals to this path "
                      "prefix");
  run_cmd->add_option("--dump-points", dump_points_prefix,
                      "write per-node point-set CSV dumps to this path prefix");
  run_cmd->add_option("--rate-convention", rate_convention,
                      "sqrt-dof (table convention) | literal")
      ->check(CLI::IsMember({"sqrt-dof", "literal"}));
  run_cmd->add_option("--startup", startup, "exact|bootstrap")
      ->check(CLI::IsMember({"exact", "bootstrap"}));
  run_cmd->add_option("--closure-value", closure_value,
                      "constant exterior closure of the auxiliary problem");
  run_cmd->add_option("--tp3a-lambda", tp3a_lambda,
                      "body: 11/10+sin(10πt); caption: 1.1+sin(πt)")
      ->check(CLI::IsMember({"body", "caption"}));
  run_cmd->add_option("--level-set", level_set,
                      "registry name or grid-file path for implicit geometry");
  run_cmd->add_option("--level-set-samples", level_set_samples,
                      "sampling resolution for registry level sets");
  run_cmd->add_flag("--check", check,
                    "exit 2 when the fitted convergence rate falls more than "
                    "0.5 below the method order");
  run_cmd->add_flag("--quiet", quiet, "suppress progress logging");

  CLI11_PARSE(app, argc, argv);

  try {
    dpm::SolverConfig config;
    config.problem = problem;
    config.order = order;
    config.geometry = geometry == "implicit" ? dpm::GeometryMode::Implicit
                                             : dpm::GeometryMode::Explicit;
    config.basis_modes = basis_modes;
    config.independent_side = independent_side;
    config.dt_factor = dt_factor;
    config.final_time = final_time;
    config.startup = startup == "bootstrap" ? dpm::StartupMode::Bootstrap
                                            : dpm::StartupMode::Exact;
    config.closure_value = closure_value;
    config.tp3a_caption_lambda = (tp3a_lambda == "caption");
    config.level_set_source = level_set;
    config.level_set_samples = level_set_samples;
    config.collect_fields = dump_fields;
    config.dump_bep_prefix = dump_bep_prefix;

    if (!dump_points_prefix.empty()) {
      dpm::SolverConfig probe_config = config;
      probe_config.grid_n = grids.front();
      dpm::Solver probe(probe_config,
                        dpm::make_problem(problem, config.tp3a_caption_lambda));
      for (int i = 0; i < probe.num_subdomains(); ++i) {
        std::ofstream out(dump_points_prefix + ".side" + std::to_string(i + 1) +
                          ".csv");
        dpm::dump_point_sets(out, probe.subdomain(i).grid,
                             probe.subdomain(i).sets);
      }
    }

    const auto convention = rate_convention == "literal"
                                ? dpm::RateConvention::Literal
                                : dpm::RateConvention::SqrtDof;
    dpm::RefinementResult result =
        dpm::run_refinement(config, grids, convention, !quiet);

    const auto table_format = format == "markdown" ? dpm::TableFormat::Markdown
                                                   : dpm::TableFormat::Csv;
    const std::string table = dpm::emit_table(result.records, table_format);
    std::cout << table;
    if (!out_path.empty()) write_file(out_path, table);

    for (size_t i = 0; i < result.runs.size(); ++i) {
      const auto& run = result.runs[i];
      const std::string tag = std::to_string(run.dof_total);
      if (dump_fields) {
        const std::string base = out_path.empty() ? "fields" : out_path;
        dump_fields_csv(base + ".fields_" + tag + ".csv", run);
      }
      if (!error_log.empty())
        dump_error_log_csv(error_log + "." + tag + ".csv", run);
    }

    if (check && result.records.size() >= 2) {
      const double slope = dpm::fitted_rate(result.records);
      if (!quiet)
        std::cout << "[dpm] fitted rate " << slope << " (order " << order << ")\n";
      if (slope < order - 0.5) {
        std::cerr << "convergence check failed: fitted rate " << slope
                  << " below " << order - 0.5 << "\n";
        return 2;
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
