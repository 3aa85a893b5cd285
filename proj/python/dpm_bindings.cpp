#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dpm/bench.hpp"
#include "dpm/timestepper.hpp"

namespace py = pybind11;
using namespace dpm;

namespace {

SolverConfig make_config(const std::string& problem, int order, int grid_n,
                         const std::string& geometry, double dt_factor,
                         double final_time, int basis_modes,
                         int independent_side, const std::string& startup,
                         bool collect_fields) {
  SolverConfig cfg;
  cfg.problem = problem;
  cfg.order = order;
  cfg.grid_n = grid_n;
  cfg.geometry = geometry == "implicit" ? GeometryMode::Implicit
                                        : GeometryMode::Explicit;
  cfg.dt_factor = dt_factor;
  cfg.final_time = final_time;
  cfg.basis_modes = basis_modes;
  cfg.independent_side = independent_side;
  cfg.startup = startup == "bootstrap" ? StartupMode::Bootstrap
                                       : StartupMode::Exact;
  cfg.collect_fields = collect_fields;
  return cfg;
}

py::dict run_py(const std::string& problem, int order, int grid_n,
                const std::string& geometry, double dt_factor,
                double final_time, int basis_modes, int independent_side,
                const std::string& startup, bool collect_fields) {
  const RunResult r = run_solver(
      make_config(problem, order, grid_n, geometry, dt_factor, final_time,
                  basis_modes, independent_side, startup, collect_fields));
  py::dict out;
  out["max_error"] = r.max_error;
  out["dof_total"] = r.dof_total;
  out["dof_active"] = r.dof_active;
  out["steps"] = r.steps;
  out["dt"] = r.dt;
  out["h"] = r.h;
  out["runtime_seconds"] = r.runtime_seconds;
  out["trailing_coefficient_ratio"] = r.trailing_coefficient_ratio;
  py::list per_step;
  for (const auto& s : r.per_step)
    per_step.append(py::make_tuple(s.step, s.t, s.max_error));
  out["per_step"] = per_step;
  if (collect_fields) {
    py::list fields;
    for (const auto& f : r.final_fields)
      fields.append(py::make_tuple(f.x, f.y, f.numeric, f.exact, f.error));
    out["final_fields"] = fields;
  }
  return out;
}

py::list refinement_py(const std::string& problem, int order,
                       const std::vector<int>& grids,
                       const std::string& geometry, double final_time) {
  SolverConfig cfg = make_config(problem, order, grids.empty() ? 100 : grids[0],
                                 geometry, 0.5, final_time, 0, 0, "exact",
                                 false);
  const RefinementResult r = run_refinement(cfg, grids);
  py::list out;
  for (const auto& rec : r.records) {
    py::dict row;
    row["dof"] = rec.dof;
    row["max_error"] = rec.max_error;
    if (rec.has_rate) row["rate"] = rec.rate;
    out.append(row);
  }
  return out;
}

std::string table_py(const std::vector<std::pair<long long, double>>& rows,
                     const std::string& format) {
  std::vector<ConvergenceRecord> recs;
  for (const auto& [dof, e] : rows) recs.push_back({dof, e, 0, false});
  attach_rates(recs);
  return emit_table(recs, format == "markdown" ? TableFormat::Markdown
                                               : TableFormat::Csv);
}

}  // namespace

PYBIND11_MODULE(_dpmbench, m) {
  m.doc() = "difference-potentials solver for parabolic problems on circular "
            "and composite domains";

  m.def("run", &run_py, py::arg("problem"), py::arg("order") = 2,
        py::arg("grid_n") = 100, py::arg("geometry") = "explicit",
        py::arg("dt_factor") = 0.5, py::arg("final_time") = 1.0,
        py::arg("basis_modes") = 0, py::arg("independent_side") = 0,
        py::arg("startup") = "exact", py::arg("collect_fields") = false,
        "run one solve and return the error summary");

  m.def("run_refinement", &refinement_py, py::arg("problem"),
        py::arg("order") = 2, py::arg("grids") = std::vector<int>{100, 200, 400},
        py::arg("geometry") = "explicit", py::arg("final_time") = 1.0,
        "run a refinement sequence and return (DOF, E, rate) rows");

  m.def("emit_table", &table_py, py::arg("rows"), py::arg("format") = "csv",
        "format (DOF, E) pairs as the benchmark table");

  m.def("convergence_rate", [](long long d0, double e0, long long d1, double e1) {
    return convergence_rate(d0, e0, d1, e1);
  });

  py::class_<Circle>(m, "Circle")
      .def(py::init([](double cx, double cy, double r) {
             return Circle({cx, cy}, r);
           }),
           py::arg("cx") = 0.0, py::arg("cy") = 0.0, py::arg("radius") = 1.0)
      .def("signed_distance",
           [](const Circle& c, double x, double y) {
             return c.signed_distance({x, y});
           })
      .def("curvature_at", &Circle::curvature_at)
      .def("total_length", &Circle::total_length)
      .def("project", [](const Circle& c, double x, double y) {
        const CurvePoint cp = c.project({x, y});
        return py::make_tuple(cp.position.x, cp.position.y, cp.arclength,
                              cp.curvature);
      });

  py::class_<LevelSetCurve, std::shared_ptr<LevelSetCurve>>(m, "LevelSetCurve")
      .def(py::init([](const std::string& source, int degree, int samples) {
             return make_level_set_curve(source, degree, samples);
           }),
           py::arg("source") = "unit-circle", py::arg("degree") = 2,
           py::arg("samples") = 441)
      .def("signed_distance",
           [](const LevelSetCurve& c, double x, double y) {
             return c.signed_distance({x, y});
           })
      .def("curvature_at", &LevelSetCurve::curvature_at)
      .def("total_length", &LevelSetCurve::total_length)
      .def("project", [](const LevelSetCurve& c, double x, double y) {
        const CurvePoint cp = c.project({x, y});
        return py::make_tuple(cp.position.x, cp.position.y, cp.arclength,
                              cp.curvature);
      });
}
