#include "msns/solver.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace msns {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

long effective_stride(long requested, long n_iters) {
  if (requested > 0) return requested;
  return (n_iters + 499) / 500;  // ceil((N+1)/500)
}

void check_feasible(const Vector& v, const ProxSetup& prox, const char* what, long k) {
  if (!prox.set.contains(v)) {
    throw SolverError(std::string(what) + " left the feasible set at iteration " +
                      std::to_string(k));
  }
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

}  // namespace

Vector y_step(const MsnsState& state, const OracleBatch& batch, const Schedule& sched,
              const ProxSetup& prox) {
  return prox_step(prox.set, state.x, batch.grad, sched.gamma_k);
}

Vector z_step(const MsnsState& state, const ProxSetup& prox) {
  if (!(state.L > 0)) throw std::invalid_argument("z_step: L must be positive");
  return project(prox.set, prox.center - (prox.sigma_d / state.L) * state.G);
}

Vector x_step(const Vector& z, const Vector& y, double tau_k) {
  require_same_dim(z, y, "x_step");
  if (!(tau_k > 0) || tau_k > 1) throw std::invalid_argument("x_step: tau_k must be in (0,1]");
  return tau_k * z + (1.0 - tau_k) * y;
}

RunReport msns_run(const StochasticOracle& oracle, const ProxSetup& prox,
                   const SmoothingParams& params, const Vector& x0, std::uint64_t rng_seed,
                   long trace_stride, const ObjectiveEval& eval) {
  if (!prox.set.contains(x0)) throw std::invalid_argument("msns_run: x0 outside the feasible set");
  if (params.N < 0 || params.m < 1) throw std::invalid_argument("msns_run: bad budget");
  if (!(params.L_total > 0)) throw std::invalid_argument("msns_run: L must be positive");

  const long n_iters = params.N + 1;
  const long stride = effective_stride(trace_stride, n_iters);
  Engine rng = make_engine(rng_seed);

  MsnsState state;
  state.x = x0;
  state.L = params.L_total;
  state.G = Vector::Zero(x0.size());
  state.u_bar_acc = 0;

  RunReport report;
  long long calls = 0;
  const auto start = Clock::now();

  for (long k = 0; k <= params.N; ++k) {
    state.k = k;
    OracleBatch batch;
    try {
      batch = oracle.sample_batch(state.x, params.m, rng);
    } catch (const std::exception& e) {
      throw SolverError("oracle failure at iteration " + std::to_string(k) + ": " + e.what());
    }
    require_finite(batch.grad, "msns_run: oracle gradient");
    calls += batch.m;

    const Schedule sched = schedule_at(k, state.L);
    state.y = y_step(state, batch, sched, prox);
    state.G.noalias() += sched.alpha_k * batch.grad;
    state.z = z_step(state, prox);
    state.u_bar_acc += batch.u_mean;

    const bool traced = (k % stride == 0) || k == params.N;
    if (traced) {
      check_feasible(state.x, prox, "x", k);
      check_feasible(state.y, prox, "y", k);
      check_feasible(state.z, prox, "z", k);
      report.trace.push_back(make_row(k, calls, seconds_since(start), eval, state.y));
    }

    if (k < params.N) state.x = x_step(state.z, state.y, sched.tau_k);
  }

  report.wall_time_s = seconds_since(start);
  report.x_hat = state.y;  // y_N
  report.u_hat = state.u_bar_acc / static_cast<double>(n_iters);
  report.oracle_calls = calls;
  return report;
}

}  // namespace msns
