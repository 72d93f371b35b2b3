#pragma once

#include <map>

#include "msns/cv.hpp"

namespace msns {

struct SolveOutcome {
  EstimatedModel model;
  BudgetResult budget;
  std::vector<SeedResult> per_seed;
  double train_obj_mean = 0;
  double test_obj_mean = 0;
  double test_obj_var = 0;  // unbiased sample variance
  double accuracy_mean = 0;
  double wall_time_mean_s = 0;
  std::string summary_text;
  std::vector<std::string> files_written;
};

struct BenchOutcome {
  EstimatedModel model;
  BudgetResult budget;
  std::vector<SolverKind> solvers;
  std::map<SolverKind, std::vector<SeedResult>> per_solver;
  std::string summary_text;
  std::vector<std::string> files_written;
};

struct CvOutcome {
  CvResult result;
  std::string table_csv;
  std::string summary_text;
  std::vector<std::string> files_written;
};

struct GenOutcome {
  std::vector<std::string> files_written;
};

struct EstimateOutcome {
  EstimatedModel model;
  BudgetResult budget;
  std::string text;
};

SolveOutcome run_solve(const RunConfig& cfg);
BenchOutcome run_bench(const RunConfig& cfg);
CvOutcome run_cv(const RunConfig& cfg);
GenOutcome run_gen(const RunConfig& cfg);
EstimateOutcome run_estimate(const RunConfig& cfg);

// Subcommands: gen | solve | cv | bench | estimate.
// Flags: --config <path>, --seed <int>, --out <dir>.
// Exit codes: 0 ok, 1 config error, 2 data error, 3 solver error.
int cli_main(int argc, const char* const* argv);

}  // namespace msns
