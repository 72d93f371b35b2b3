#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "msns/ball.hpp"
#include "msns/oracle.hpp"
#include "msns/schedule.hpp"
#include "msns/smoothing.hpp"

namespace msns {

struct TraceRow {
  long k = 0;
  long long oracle_calls = 0;
  double wall_time_s = 0;
  double smoothed_train_obj = 0;
  double exact_train_obj = 0;
};

// Full-training-set objectives of a candidate point: {smoothed, exact}.
// Optional; when absent, trace objective columns are NaN.
using ObjectiveEval = std::function<std::pair<double, double>(const Vector&)>;

struct RunReport {
  Vector x_hat;
  double u_hat = 0;       // averaged inner maximizer, in [0,1]
  std::optional<double> gap;
  std::vector<TraceRow> trace;
  long long oracle_calls = 0;  // exactly (N+1) * m
  double wall_time_s = 0;      // iteration loop only
  std::optional<long> stop_index;  // RSPG's drawn R
  std::optional<double> g_hat;     // M-MDSA's gradient-scale estimate
};

// Iteration state: x_k, the last y_k/z_k, the accumulated linear coefficient
// G = sum_{i<=k} alpha_i grad_i of the z-subproblem, and the running sum of
// batch u-means. The affine constants of the z-subproblem do not move its
// argmin and are not tracked.
struct MsnsState {
  long k = 0;
  Vector x;
  Vector y;
  Vector z;
  Vector G;
  double u_bar_acc = 0;
  double L = 0;
};

// y_k = argmin_y { <grad, y - x_k> + ||y - x_k||^2 / (2 gamma_k) } over X.
Vector y_step(const MsnsState& state, const OracleBatch& batch, const Schedule& sched,
              const ProxSetup& prox);

// z_k = argmin_x { (L/sigma_d) d(x) + <G, x> } over X
//     = project(center - (sigma_d/L) G) for the Euclidean prox-function.
Vector z_step(const MsnsState& state, const ProxSetup& prox);

// x_{k+1} = tau_k z_k + (1 - tau_k) y_k.
Vector x_step(const Vector& z, const Vector& y, double tau_k);

// Runs the three-sequence scheme for k = 0..N and returns x_hat = y_N with
// the dual point u_hat = (1/(N+1)) sum_k u_mean(x_k). trace_stride 0 picks
// ceil((N+1)/500); the final iterate is always traced.
RunReport msns_run(const StochasticOracle& oracle, const ProxSetup& prox,
                   const SmoothingParams& params, const Vector& x0, std::uint64_t rng_seed,
                   long trace_stride = 0, const ObjectiveEval& eval = {});

}  // namespace msns
