#include "msns/duality.hpp"

#include <cmath>

#include "msns/svm.hpp"

namespace msns {

double dual_value(double u_hat, const Dataset& train, double lambda1, const Matrix& Sigma,
                  const ProxSetup& prox, double tol, long max_iter) {
  if (u_hat < 0 || u_hat > 1) throw std::invalid_argument("dual_value: u_hat must be in [0,1]");
  if (train.dim() != Sigma.rows()) throw std::invalid_argument("dual_value: shape mismatch");

  // inner objective: lambda1 x' Sigma x + u_hat (1 + a' x), a = mean(-y z)
  const Vector a =
      -(train.features.transpose() * train.labels) / static_cast<double>(train.size());
  const Vector linear = u_hat * a;

  // eps_reg keeps the stepsize finite when the quadratic part vanishes
  constexpr double eps_reg = 1e-12;
  const double curvature = lambda1 > 0 ? 2.0 * lambda1 * lambda_max(Sigma) : 0.0;
  const double step = 1.0 / (curvature + eps_reg);

  auto objective = [&](const Vector& x) { return lambda1 * x.dot(Sigma * x) + linear.dot(x); };

  Vector x = prox.center;
  double best = objective(x);
  for (long it = 0; it < max_iter; ++it) {
    const Vector grad = 2.0 * lambda1 * (Sigma * x) + linear;
    const Vector next = prox_step(prox.set, x, grad, step);
    const double pg_norm = (x - next).norm() / step;
    x = next;
    best = std::min(best, objective(x));
    if (pg_norm <= tol) return u_hat + best;
  }
  throw DualSolveError("dual_value: projected gradient did not reach tol within " +
                           std::to_string(max_iter) + " iterations",
                       u_hat + best);
}

double duality_gap(const Vector& x_hat, double u_hat, const Dataset& train, double lambda1,
                   const Matrix& Sigma, const ProxSetup& prox, double tol) {
  const double primal = exact_objective(x_hat, train, lambda1, Sigma);
  const double dual = dual_value(u_hat, train, lambda1, Sigma, prox, tol);
  const double gap = primal - dual;
  if (gap < -1e-8) {
    throw SolverError("duality_gap: weak duality violated (gap = " + format_g17(gap) + ")");
  }
  return gap;
}

}  // namespace msns
