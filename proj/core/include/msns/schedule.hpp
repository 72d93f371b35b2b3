#pragma once

#include <cmath>
#include <stdexcept>

namespace msns {

// Accelerated-scheme coefficients at iterate k:
//   alpha_k = 1/2, A_k = sum_{i<=k} alpha_i = (k+1)/2,
//   tau_k = alpha_{k+1}/A_{k+1} = 1/(k+2),
//   gamma_k = 1/(L sqrt(A_k)) = sqrt(2)/(L sqrt(k+1)).
struct Schedule {
  long k;
  double alpha_k;
  double A_k;
  double tau_k;
  double gamma_k;
  double L;
};

inline Schedule schedule_at(long k, double L) {
  if (k < 0) throw std::invalid_argument("schedule_at: k must be >= 0");
  if (!(L > 0)) throw std::invalid_argument("schedule_at: L must be positive");
  Schedule s;
  s.k = k;
  s.L = L;
  s.alpha_k = 0.5;
  s.A_k = 0.5 * static_cast<double>(k + 1);
  s.tau_k = 1.0 / static_cast<double>(k + 2);
  s.gamma_k = std::sqrt(2.0) / (L * std::sqrt(static_cast<double>(k + 1)));
  return s;
}

}  // namespace msns
