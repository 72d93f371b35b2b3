#include "msns/baselines.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "msns/reduce.hpp"

namespace msns {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

long effective_stride(long requested, long n_iters) {
  if (requested > 0) return requested;
  return (n_iters + 499) / 500;
}

TraceRow make_row(long k, long long calls, double elapsed, const ObjectiveEval& eval,
                  const Vector& candidate) {
  TraceRow row;
  row.k = k;
  row.oracle_calls = calls;
  row.wall_time_s = elapsed;
  if (eval) {
    auto [smoothed, exact] = eval(candidate);
    row.smoothed_train_obj = smoothed;
    row.exact_train_obj = exact;
  } else {
    row.smoothed_train_obj = std::numeric_limits<double>::quiet_NaN();
    row.exact_train_obj = std::numeric_limits<double>::quiet_NaN();
  }
  return row;
}

void check_params(const BaselineParams& params, const ProxSetup& prox, const Vector& x0,
                  StepsizePolicy expected, const char* what) {
  if (params.stepsize_policy != expected) {
    throw std::invalid_argument(std::string(what) + ": wrong stepsize policy");
  }
  if (params.N < 0 || params.m < 1) throw std::invalid_argument(std::string(what) + ": bad budget");
  if (!(params.L > 0)) throw std::invalid_argument(std::string(what) + ": L must be positive");
  if (!prox.set.contains(x0)) {
    throw std::invalid_argument(std::string(what) + ": x0 outside the feasible set");
  }
}

OracleBatch call_oracle(const StochasticOracle& oracle, const Vector& x, long m, Engine& rng,
                        long k) {
  try {
    OracleBatch batch = oracle.sample_batch(x, m, rng);
    require_finite(batch.grad, "baseline oracle gradient");
    return batch;
  } catch (const SolverError&) {
    throw;
  } catch (const std::exception& e) {
    throw SolverError("oracle failure at iteration " + std::to_string(k) + ": " + e.what());
  }
}

}  // namespace

RunReport mmdsa_run(const StochasticOracle& oracle, const ProxSetup& prox,
                    const BaselineParams& params, const Vector& x0, long trace_stride,
                    const ObjectiveEval& eval) {
  check_params(params, prox, x0, StepsizePolicy::constant_mdsa, "mmdsa_run");

  // G_hat: root mean square of 100 single-sample gradient norms at x0,
  // drawn from a separate stream and excluded from the oracle-call budget.
  Engine ghat_rng = make_engine(derive_seed(params.rng_seed, {stream::ghat}));
  PairwiseAccumulator<double> sq_acc;
  for (int i = 0; i < 100; ++i) {
    sq_acc.add(oracle.sample_batch(x0, 1, ghat_rng).grad.squaredNorm());
  }
  const double g_hat = std::sqrt(sq_acc.total() / 100.0);

  const long n_iters = params.N + 1;
  double gamma = 1.0;
  if (g_hat > 0) {
    gamma = std::sqrt(2.0 * prox.D / prox.sigma_d) /
            (g_hat * std::sqrt(static_cast<double>(n_iters)));
  }

  const long stride = effective_stride(trace_stride, n_iters);
  Engine rng = make_engine(derive_seed(params.rng_seed, {stream::run}));

  RunReport report;
  report.g_hat = g_hat;
  long long calls = 0;
  Vector x = x0;
  Vector mean = Vector::Zero(x0.size());  // running mean of x_0..x_k
  double u_acc = 0;
  const auto start = Clock::now();

  for (long k = 0; k <= params.N; ++k) {
    const OracleBatch batch = call_oracle(oracle, x, params.m, rng, k);
    calls += batch.m;
    u_acc += batch.u_mean;
    mean += (x - mean) / static_cast<double>(k + 1);

    if (k % stride == 0 || k == params.N) {
      if (!prox.set.contains(x)) {
        throw SolverError("mmdsa_run: iterate left the feasible set at iteration " +
                          std::to_string(k));
      }
      report.trace.push_back(make_row(k, calls, seconds_since(start), eval, mean));
    }

    if (k < params.N) x = prox_step(prox.set, x, batch.grad, gamma);
  }

  report.wall_time_s = seconds_since(start);
  report.x_hat = mean;
  report.u_hat = u_acc / static_cast<double>(n_iters);
  report.oracle_calls = calls;
  return report;
}

RunReport rspg_run(const StochasticOracle& oracle, const ProxSetup& prox,
                   const BaselineParams& params, const Vector& x0, long trace_stride,
                   const ObjectiveEval& eval) {
  check_params(params, prox, x0, StepsizePolicy::rspg_half_over_L, "rspg_run");

  const long n_iters = params.N + 1;
  const long stride = effective_stride(trace_stride, n_iters);
  const double gamma = 1.0 / (2.0 * params.L);
  Engine rng = make_engine(derive_seed(params.rng_seed, {stream::run}));

  // stopping index drawn before iterating, from the run's stream
  long R = 0;
  if (params.N >= 1) {
    std::uniform_int_distribution<long> pick(1, params.N);
    R = pick(rng);
  }

  RunReport report;
  report.stop_index = R;
  long long calls = 0;
  Vector x = x0;
  Vector x_out = x0;  // x_R (R = 0 when N = 0)
  double u_acc = 0;
  const auto start = Clock::now();

  for (long k = 0; k <= params.N; ++k) {
    const OracleBatch batch = call_oracle(oracle, x, params.m, rng, k);
    calls += batch.m;
    u_acc += batch.u_mean;

    const Vector next = prox_step(prox.set, x, batch.grad, gamma);
    if (k + 1 == R) x_out = next;

    if (k % stride == 0 || k == params.N) {
      if (!prox.set.contains(x)) {
        throw SolverError("rspg_run: iterate left the feasible set at iteration " +
                          std::to_string(k));
      }
      report.trace.push_back(make_row(k, calls, seconds_since(start), eval, next));
    }
    x = next;
  }

  report.wall_time_s = seconds_since(start);
  report.x_hat = x_out;
  report.u_hat = u_acc / static_cast<double>(n_iters);
  report.oracle_calls = calls;
  return report;
}

}  // namespace msns
