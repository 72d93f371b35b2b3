#include "msns/ball.hpp"

#include <cmath>

namespace msns {

BallSet::BallSet(double radius_sq_, long dim_) : radius_sq(radius_sq_), dim(dim_) {
  if (!(radius_sq > 0) || !std::isfinite(radius_sq)) {
    throw std::invalid_argument("BallSet: radius_sq must be positive and finite");
  }
  if (dim < 1) throw std::invalid_argument("BallSet: dim must be positive");
}

bool BallSet::contains(const Vector& x) const {
  if (x.size() != dim) return false;
  return x.squaredNorm() <= radius_sq + tol_feas;
}

double BallSet::radius() const { return std::sqrt(radius_sq); }

ProxSetup ProxSetup::euclidean(const BallSet& set) {
  return ProxSetup{set, 1.0, set.radius_sq / 2.0, Vector::Zero(set.dim)};
}

Vector project(const BallSet& set, const Vector& p) {
  if (p.size() != set.dim) throw std::invalid_argument("project: dimension mismatch");
  require_finite(p, "project");
  // membership tolerance keeps projection exactly idempotent: a rescaled
  // boundary point whose recomputed norm rounds a hair above radius_sq is
  // still a fixed point
  if (set.contains(p)) return p;
  return p * (set.radius() / p.norm());
}

Vector prox_step(const BallSet& set, const Vector& x, const Vector& g, double gamma) {
  if (!(gamma > 0) || !std::isfinite(gamma)) {
    throw std::invalid_argument("prox_step: gamma must be positive");
  }
  require_same_dim(x, g, "prox_step");
  require_finite(x, "prox_step x");
  require_finite(g, "prox_step g");
  return project(set, x - gamma * g);
}

Vector generalized_projected_gradient(const BallSet& set, const Vector& x, const Vector& g,
                                      double gamma) {
  return (x - prox_step(set, x, g, gamma)) / gamma;
}

}  // namespace msns
