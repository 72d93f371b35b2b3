#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace msns {

enum class ProblemKind { synthetic, csv, libsvm };
enum class SolverKind { msns, mmdsa, rspg };

std::string to_string(ProblemKind k);
std::string to_string(SolverKind k);
SolverKind solver_from_string(const std::string& s);
ProblemKind problem_from_string(const std::string& s);

// Flat key = value run configuration. Unknown and duplicate keys are errors.
struct RunConfig {
  ProblemKind problem = ProblemKind::synthetic;

  // synthetic problem
  long n = 0;
  long train_size = 0;
  long test_size = 0;

  // file problems
  std::string path;
  std::string test_path;
  std::map<std::string, int> label_map;

  double eps = 0;
  double lambda1 = 0;
  double t = 0;

  SolverKind solver = SolverKind::msns;
  std::vector<SolverKind> solvers;  // bench

  std::uint64_t seed = 0;  // master seed; --seed overrides
  std::vector<std::uint64_t> seeds;

  // overrides
  std::optional<long> N;
  std::optional<long> m;
  std::optional<double> mu;
  std::optional<std::vector<double>> x0;

  long trace_stride = 0;  // 0 = ceil((N+1)/500)
  unsigned threads = 0;   // 0 = hardware concurrency
  bool gap = true;
  std::string out_dir;

  std::vector<double> cv_values = {1e-2, 1e-1, 0.25, 0.5, 1.0};
  int cv_folds = 3;
  int cv_repeats = 1;

  bool operator==(const RunConfig&) const = default;
};

RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& cfg);

// Structural checks shared by every command.
void validate_config(const RunConfig& cfg);
// eps must be positive unless N, m and mu are all overridden.
void validate_budget_inputs(const RunConfig& cfg);
// Budget inputs plus nonempty seeds and a positive t (solve/bench).
void validate_solve_fields(const RunConfig& cfg);

}  // namespace msns
