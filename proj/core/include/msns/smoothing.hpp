#pragma once

#include <utility>

#include "msns/ball.hpp"

namespace msns {

// Problem constants feeding the budget and smoothing formulas.
struct StructureConstants {
  double A_norm = 0;       // operator norm ||A||
  double Omega = 0;        // max_U omega(u)
  double sigma_omega = 0;  // strong convexity modulus of omega
  double L_f = 0;          // Lipschitz constant of grad f
  double sigma2 = 0;       // oracle gradient variance bound

  void validate() const;
};

struct SmoothingParams {
  double mu;
  double L_h_mu;   // ||A||^2 / (mu sigma_omega)
  double L_total;  // L_f + L_h_mu
  long N;          // iteration limit (loop runs k = 0..N)
  long m;          // batch size, >= 1
};

// N+1 = ceil( 4(6-sqrt2) D Omega ||A||^2 / (sigma_d sigma_omega eps^2)
//           + 2(6-sqrt2) L_f D / (sigma_d eps) ), clamped to >= 1.
long iteration_budget(double eps, const StructureConstants& c, const ProxSetup& prox);

// m = ceil( sqrt(2) sigma^2 sigma_omega sqrt(N+1) / (||A||^2 Omega) ),
// clamped to >= 1. ||A|| = 0 is rejected.
long batch_size(long N, const StructureConstants& c);

// mu = ||A||^2 sqrt((6-sqrt2) m D)
//      / ( sqrt(2(N+1) sigma_d sigma_omega)
//          * sqrt(m ||A||^2 Omega + sqrt(2(N+1)) sigma_omega sigma^2) ).
double smoothing_parameter(long N, long m, const StructureConstants& c, const ProxSetup& prox);

// {L_h_mu, L_total}.
std::pair<double, double> lipschitz_total(double mu, const StructureConstants& c);

SmoothingParams make_smoothing_params(long N, long m, double mu, const StructureConstants& c);

}  // namespace msns
