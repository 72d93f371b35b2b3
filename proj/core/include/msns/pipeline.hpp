#pragma once

#include <optional>

#include "msns/baselines.hpp"
#include "msns/config.hpp"
#include "msns/duality.hpp"
#include "msns/smoothing.hpp"
#include "msns/solver.hpp"
#include "msns/svm.hpp"

namespace msns {

struct ProblemData {
  Dataset train;
  std::optional<Dataset> test;
  std::optional<Vector> x_bar;
};

// Generates (synthetic) or loads (csv/libsvm) the datasets. The synthetic
// draw uses streams derived from the master seed only.
ProblemData load_problem(const RunConfig& cfg);

struct EstimatedModel {
  Matrix Sigma;
  double lam_max = 0;
  double A_norm = 0;
  double L_f = 0;
  double sigma2 = 0;
  bool sigma2_estimated = false;

  // Omega = 1/2 and sigma_omega = 1 for the scalar smoothed hinge.
  StructureConstants constants() const;
};

EstimatedModel estimate_model(const Dataset& train, double lambda1);

struct BudgetResult {
  long N = 0;
  long m = 1;
  double mu = 0;
  double L_h_mu = 0;
  double L = 0;

  SmoothingParams smoothing(const EstimatedModel& model) const;
};

// Budget pipeline honoring config overrides. sigma^2 is first estimated at
// the provisional mu0 = eps, N/m/mu derived, then sigma^2 re-estimated once
// at the final mu and m/mu recomputed once. Updates model.sigma2.
BudgetResult derive_budgets(const RunConfig& cfg, EstimatedModel& model, const Dataset& train,
                            const ProxSetup& prox);

struct SeedResult {
  std::uint64_t seed = 0;
  double final_exact_train_obj = 0;
  double final_smoothed_train_obj = 0;
  double test_obj = 0;     // exact objective on the test set
  double accuracy = 0;
  std::optional<double> gap;
  double u_hat = 0;
  double wall_time_s = 0;
  long long oracle_calls = 0;
  std::optional<long> stop_index;
  std::optional<double> g_hat;
  std::vector<TraceRow> trace;
};

Vector resolve_x0(const RunConfig& cfg, const ProxSetup& prox);

// One seeded solver run plus evaluation.
SeedResult run_one(SolverKind kind, const Dataset& train, const Dataset* test,
                   const EstimatedModel& model, const BudgetResult& budget,
                   const RunConfig& cfg, std::uint64_t run_seed);

}  // namespace msns
