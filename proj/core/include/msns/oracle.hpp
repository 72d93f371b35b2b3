#pragma once

#include "msns/common.hpp"
#include "msns/rng.hpp"

namespace msns {

// Aggregate of m stochastic oracle samples at one query point: value and
// gradient are arithmetic means, u_mean is the batch-average inner
// maximizer (in [0,1]) kept for dual-point accumulation.
struct OracleBatch {
  double value = 0;
  Vector grad;
  double u_mean = 0;
  long m = 0;
};

// Unbiased noisy value/gradient source for the smoothed objective. The
// contract: E[value] = psi_mu(x), E[grad] = grad psi_mu(x), and
// E||grad - grad psi_mu(x)||^2 <= sigma^2 per single sample.
class StochasticOracle {
 public:
  virtual ~StochasticOracle() = default;

  virtual OracleBatch sample_batch(const Vector& x, long m, Engine& rng) const = 0;
  virtual long dim() const = 0;
};

}  // namespace msns
