#include "msns/pipeline.hpp"

#include <cmath>

namespace msns {

ProblemData load_problem(const RunConfig& cfg) {
  ProblemData out;
  switch (cfg.problem) {
    case ProblemKind::synthetic: {
      SyntheticData s =
          generate_synthetic(cfg.n, cfg.train_size, cfg.test_size, cfg.t, cfg.seed);
      out.train = std::move(s.train);
      out.test = std::move(s.test);
      out.x_bar = std::move(s.x_bar);
      break;
    }
    case ProblemKind::csv: {
      out.train = load_csv(cfg.path, cfg.label_map);
      if (!cfg.test_path.empty()) out.test = load_csv(cfg.test_path, cfg.label_map);
      break;
    }
    case ProblemKind::libsvm: {
      out.train = load_libsvm(cfg.path, cfg.label_map);
      if (!cfg.test_path.empty()) out.test = load_libsvm(cfg.test_path, cfg.label_map);
      break;
    }
  }
  return out;
}

StructureConstants EstimatedModel::constants() const {
  StructureConstants c;
  c.A_norm = A_norm;
  c.Omega = 0.5;       // omega(u) = u^2/2 on [0,1]
  c.sigma_omega = 1.0;
  c.L_f = L_f;
  c.sigma2 = sigma2_estimated ? sigma2 : 0.0;
  return c;
}

EstimatedModel estimate_model(const Dataset& train, double lambda1) {
  EstimatedModel model;
  model.Sigma = covariance(train);
  if (!model.Sigma.allFinite()) {
    throw SolverError("estimate: covariance overflowed to non-finite values");
  }
  model.lam_max = lambda_max(model.Sigma);
  model.A_norm = estimate_A_norm(train);
  model.L_f = 2.0 * lambda1 * model.lam_max;
  return model;
}

SmoothingParams BudgetResult::smoothing(const EstimatedModel& model) const {
  (void)model;
  return SmoothingParams{mu, L_h_mu, L, N, m};
}

BudgetResult derive_budgets(const RunConfig& cfg, EstimatedModel& model, const Dataset& train,
                            const ProxSetup& prox) {
  BudgetResult out;
  StructureConstants c = model.constants();

  const bool need_sigma2 = !(cfg.m && cfg.mu);
  if (need_sigma2) {
    // provisional estimate at mu0 = eps; the gradient noise depends on mu
    // only through the u-clipping
    const double mu0 = cfg.mu ? *cfg.mu : cfg.eps;
    model.sigma2 = estimate_sigma2(train, mu0, cfg.lambda1, model.Sigma, prox,
                                   derive_seed(cfg.seed, {stream::sigma2, 0}));
    model.sigma2_estimated = true;
    c.sigma2 = model.sigma2;
  }

  out.N = cfg.N ? *cfg.N : iteration_budget(cfg.eps, c, prox);
  out.m = cfg.m ? *cfg.m : batch_size(out.N, c);
  out.mu = cfg.mu ? *cfg.mu : smoothing_parameter(out.N, out.m, c, prox);

  if (!cfg.m || !cfg.mu) {
    // second pass at the final mu, then recompute m and mu once
    model.sigma2 = estimate_sigma2(train, out.mu, cfg.lambda1, model.Sigma, prox,
                                   derive_seed(cfg.seed, {stream::sigma2, 1}));
    model.sigma2_estimated = true;
    c.sigma2 = model.sigma2;
    if (!cfg.m) out.m = batch_size(out.N, c);
    if (!cfg.mu) out.mu = smoothing_parameter(out.N, out.m, c, prox);
  }

  out.L_h_mu = model.A_norm * model.A_norm / (out.mu * c.sigma_omega);
  out.L = model.L_f + out.L_h_mu;
  if (out.L <= 0) out.L = 1e-12;  // degenerate objective; any positive L works
  return out;
}

Vector resolve_x0(const RunConfig& cfg, const ProxSetup& prox) {
  if (!cfg.x0) return prox.center;
  Vector x0 = Eigen::Map<const Vector>(cfg.x0->data(), static_cast<long>(cfg.x0->size()));
  if (x0.size() != prox.set.dim) {
    throw ConfigError("config: x0 has dimension " + std::to_string(x0.size()) + ", expected " +
                      std::to_string(prox.set.dim));
  }
  if (!prox.set.contains(x0)) throw ConfigError("config: x0 lies outside the feasible set");
  return x0;
}

SeedResult run_one(SolverKind kind, const Dataset& train, const Dataset* test,
                   const EstimatedModel& model, const BudgetResult& budget,
                   const RunConfig& cfg, std::uint64_t run_seed) {
  const BallSet ball(cfg.t, train.dim());
  const ProxSetup prox = ProxSetup::euclidean(ball);
  const Vector x0 = resolve_x0(cfg, prox);
  const SvmOracle oracle(train, model.Sigma, cfg.lambda1, budget.mu);

  const ObjectiveEval eval = [&](const Vector& x) {
    return std::make_pair(smoothed_objective(x, train, cfg.lambda1, model.Sigma, budget.mu),
                          exact_objective(x, train, cfg.lambda1, model.Sigma));
  };

  const std::uint64_t solver_seed = derive_seed(cfg.seed, {stream::run, run_seed});
  RunReport report;
  switch (kind) {
    case SolverKind::msns: {
      const SmoothingParams params = budget.smoothing(model);
      report = msns_run(oracle, prox, params, x0, solver_seed, cfg.trace_stride, eval);
      break;
    }
    case SolverKind::mmdsa: {
      BaselineParams params{budget.N, budget.m, StepsizePolicy::constant_mdsa, budget.L,
                            solver_seed};
      report = mmdsa_run(oracle, prox, params, x0, cfg.trace_stride, eval);
      break;
    }
    case SolverKind::rspg: {
      BaselineParams params{budget.N, budget.m, StepsizePolicy::rspg_half_over_L, budget.L,
                            solver_seed};
      report = rspg_run(oracle, prox, params, x0, cfg.trace_stride, eval);
      break;
    }
  }

  SeedResult result;
  result.seed = run_seed;
  result.final_exact_train_obj = exact_objective(report.x_hat, train, cfg.lambda1, model.Sigma);
  result.final_smoothed_train_obj =
      smoothed_objective(report.x_hat, train, cfg.lambda1, model.Sigma, budget.mu);
  if (test != nullptr) {
    result.test_obj = exact_objective(report.x_hat, *test, cfg.lambda1, model.Sigma);
    result.accuracy = predict_accuracy(report.x_hat, *test);
  } else {
    result.test_obj = result.final_exact_train_obj;
    result.accuracy = predict_accuracy(report.x_hat, train);
  }
  if (cfg.gap) {
    result.gap = duality_gap(report.x_hat, report.u_hat, train, cfg.lambda1, model.Sigma, prox);
  }
  result.u_hat = report.u_hat;
  result.wall_time_s = report.wall_time_s;
  result.oracle_calls = report.oracle_calls;
  result.stop_index = report.stop_index;
  result.g_hat = report.g_hat;
  result.trace = std::move(report.trace);
  return result;
}

}  // namespace msns
