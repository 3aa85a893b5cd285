#pragma once

#include <string>
#include <vector>

#include "dpm/timestepper.hpp"

namespace dpm {

struct ConvergenceRecord {
  long long dof = 0;
  double max_error = 0.0;
  double rate = 0.0;       // vs the previous row; meaningless when !has_rate
  bool has_rate = false;
};

enum class RateConvention {
  SqrtDof,   // log(E_{n−1}/E_n) / log(√(DOF_n/DOF_{n−1})), the tables' "Rate"
  Literal,   // log(E_{n−1}/E_n) / log(DOF_{n−1}/DOF_n)
};

double convergence_rate(long long dof_prev, double e_prev, long long dof_next,
                        double e_next,
                        RateConvention convention = RateConvention::SqrtDof);

/// Attaches rates to a sequence of (DOF, E) rows (first row has none).
void attach_rates(std::vector<ConvergenceRecord>& records,
                  RateConvention convention = RateConvention::SqrtDof);

/// Least-squares slope of log10(E) against −log10(√DOF): the fitted
/// convergence order over the whole refinement sequence.
double fitted_rate(const std::vector<ConvergenceRecord>& records);

enum class TableFormat { Csv, Markdown };

std::string emit_table(const std::vector<ConvergenceRecord>& records,
                       TableFormat format);

std::vector<ConvergenceRecord> parse_table_csv(const std::string& text);

struct RefinementResult {
  std::vector<ConvergenceRecord> records;
  std::vector<RunResult> runs;
};

/// Runs the refinement sequence `grids` (nodes per axis) for one problem.
RefinementResult run_refinement(SolverConfig config,
                                const std::vector<int>& grids,
                                RateConvention convention = RateConvention::SqrtDof,
                                bool verbose = false);

}  // namespace dpm
