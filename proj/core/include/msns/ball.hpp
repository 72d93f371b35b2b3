#pragma once

#include "msns/common.hpp"

namespace msns {

// Euclidean ball X = {x : ||x||^2 <= radius_sq}.
struct BallSet {
  double radius_sq;
  long dim;

  BallSet(double radius_sq, long dim);

  // Absolute feasibility tolerance on ||x||^2 - radius_sq.
  static constexpr double tol_feas = 1e-12;

  bool contains(const Vector& x) const;
  double radius() const;
};

// Prox-function setup for d(x) = 1/2 ||x - center||^2 over the ball:
// sigma_d = 1, center = 0, D = radius_sq / 2, d(center) = 0. The constants
// are carried explicitly so another prox-function could be plugged in
// without touching solver code.
struct ProxSetup {
  BallSet set;
  double sigma_d;
  double D;
  Vector center;

  static ProxSetup euclidean(const BallSet& set);
};

// argmin_{y in X} ||y - p||: p itself inside, radial scaling outside.
Vector project(const BallSet& set, const Vector& p);

// argmin_{y in X} { <g,y> + (1/(2 gamma)) ||y - x||^2 } = project(x - gamma g).
Vector prox_step(const BallSet& set, const Vector& x, const Vector& g, double gamma);

// P_X(x,g,gamma) = (x - prox_step(x,g,gamma)) / gamma.
Vector generalized_projected_gradient(const BallSet& set, const Vector& x, const Vector& g,
                                      double gamma);

}  // namespace msns
