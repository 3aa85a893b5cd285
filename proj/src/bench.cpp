#include "dpm/bench.hpp"

#include <cstdio>
#include <iostream>
#include <sstream>

namespace dpm {

double convergence_rate(long long dof_prev, double e_prev, long long dof_next,
                        double e_next, RateConvention convention) {
  DPM_REQUIRE(e_prev > 0.0 && e_next > 0.0,
              "convergence rate needs positive errors");
  DPM_REQUIRE(dof_prev != dof_next, "convergence rate needs distinct DOF");
  const double er = std::log(e_prev / e_next);
  if (convention == RateConvention::SqrtDof)
    return er / std::log(std::sqrt(static_cast<double>(dof_next) /
                                   static_cast<double>(dof_prev)));
  return er / std::log(static_cast<double>(dof_prev) /
                       static_cast<double>(dof_next));
}

void attach_rates(std::vector<ConvergenceRecord>& records,
                  RateConvention convention) {
  for (size_t i = 0; i < records.size(); ++i) {
    if (i == 0) {
      records[i].has_rate = false;
      continue;
    }
    records[i].rate =
        convergence_rate(records[i - 1].dof, records[i - 1].max_error,
                         records[i].dof, records[i].max_error, convention);
    records[i].has_rate = true;
  }
}

double fitted_rate(const std::vector<ConvergenceRecord>& records) {
  DPM_REQUIRE(records.size() >= 2, "fit needs at least two rows");
  const int n = static_cast<int>(records.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : records) {
    const double x = -0.5 * std::log10(static_cast<double>(r.dof));
    const double y = std::log10(r.max_error);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::string emit_table(const std::vector<ConvergenceRecord>& records,
                       TableFormat format) {
  std::ostringstream out;
  char buf[64];
  if (format == TableFormat::Csv) {
    out << "DOF,E,Rate\n";
    for (const auto& r : records) {
      std::snprintf(buf, sizeof(buf), "%.4e", r.max_error);
      out << r.dof << "," << buf << ",";
      if (r.has_rate) {
        std::snprintf(buf, sizeof(buf), "%.2f", r.rate);
        out << buf;
      }
      out << "\n";
    }
  } else {
    out << "| DOF | E | Rate |\n|---|---|---|\n";
    for (const auto& r : records) {
      std::snprintf(buf, sizeof(buf), "%.4e", r.max_error);
      out << "| " << r.dof << " | " << buf << " | ";
      if (r.has_rate) {
        std::snprintf(buf, sizeof(buf), "%.2f", r.rate);
        out << buf;
      } else {
        out << "---";
      }
      out << " |\n";
    }
  }
  return out.str();
}

std::vector<ConvergenceRecord> parse_table_csv(const std::string& text) {
  std::vector<ConvergenceRecord> records;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      header = false;
      continue;
    }
    if (line.empty()) continue;
    ConvergenceRecord r;
    std::istringstream ls(line);
    std::string field;
    std::getline(ls, field, ',');
    r.dof = std::stoll(field);
    std::getline(ls, field, ',');
    r.max_error = std::stod(field);
    if (std::getline(ls, field, ',') && !field.empty()) {
      r.rate = std::stod(field);
      r.has_rate = true;
    }
    records.push_back(r);
  }
  return records;
}

RefinementResult run_refinement(SolverConfig config,
                                const std::vector<int>& grids,
                                RateConvention convention, bool verbose) {
  RefinementResult out;
  for (int n : grids) {
    config.grid_n = n;
    if (verbose)
      std::cout << "[dpm] running " << config.problem << " order "
                << config.order << " grid " << n << "x" << n << " ..."
                << std::endl;
    RunResult run = run_solver(config);
    ConvergenceRecord rec;
    rec.dof = run.dof_total;
    rec.max_error = run.max_error;
    out.records.push_back(rec);
    if (verbose)
      std::cout << "[dpm]   DOF " << run.dof_total << " (active "
                << run.dof_active << "), E = " << run.max_error << ", "
                << run.steps << " steps, " << run.runtime_seconds
                << " s, trailing-coefficient ratio "
                << run.trailing_coefficient_ratio << std::endl;
    out.runs.push_back(std::move(run));
  }
  attach_rates(out.records, convention);
  return out;
}

}  // namespace dpm
