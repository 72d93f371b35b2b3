#pragma once

#include "msns/solver.hpp"

namespace msns {

enum class StepsizePolicy {
  constant_mdsa,     // gamma = sqrt(2 D / sigma_d) / (G_hat sqrt(N+1))
  rspg_half_over_L,  // gamma = 1 / (2 L), random stopping index
};

struct BaselineParams {
  long N = 0;
  long m = 1;
  StepsizePolicy stepsize_policy;
  double L = 0;
  std::uint64_t rng_seed = 0;
};

// Mini-batch mirror-descent SA with Euclidean prox and constant stepsize.
// G_hat is the root mean square of 100 single-sample gradient norms at x0
// (separate stream, not counted as oracle calls). Output is the plain mean
// of the query points x_0..x_N (stepsize-weighted mean at constant gamma).
RunReport mmdsa_run(const StochasticOracle& oracle, const ProxSetup& prox,
                    const BaselineParams& params, const Vector& x0, long trace_stride = 0,
                    const ObjectiveEval& eval = {});

// Projected gradient with gamma = 1/(2L). R is drawn uniformly from {1..N}
// before iterating (R = 0 when N = 0); the full loop still runs so the
// oracle budget matches (N+1)*m; output is x_R, with R recorded.
RunReport rspg_run(const StochasticOracle& oracle, const ProxSetup& prox,
                   const BaselineParams& params, const Vector& x0, long trace_stride = 0,
                   const ObjectiveEval& eval = {});

}  // namespace msns
