#pragma once

#include "msns/ball.hpp"
#include "msns/dataset.hpp"

namespace msns {

struct DualSolveError : SolverError {
  double best_value;
  DualSolveError(const std::string& msg, double best) : SolverError(msg), best_value(best) {}
};

// phi(u) = min over the ball of lambda1 x' Sigma x + u (1 - (1/NS) sum y_i z_i' x),
// solved by projected gradient with fixed stepsize 1/(2 lambda1 lambda_max(Sigma) + eps_reg),
// stopping when the generalized projected-gradient norm falls below tol.
// Throws DualSolveError (carrying the best value found) past max_iter.
double dual_value(double u_hat, const Dataset& train, double lambda1, const Matrix& Sigma,
                  const ProxSetup& prox, double tol = 1e-8, long max_iter = 100000);

// psi(x_hat) with the exact hinge on the training set, minus dual_value(u_hat).
// Weak duality bounds the result below by -1e-8 at solver tolerance.
double duality_gap(const Vector& x_hat, double u_hat, const Dataset& train, double lambda1,
                   const Matrix& Sigma, const ProxSetup& prox, double tol = 1e-8);

}  // namespace msns
