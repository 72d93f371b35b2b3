#include "msns/smoothing.hpp"

#include <cmath>

namespace msns {

namespace {

constexpr double k6ms2 = 6.0 - 1.4142135623730951;  // 6 - sqrt(2)

// Ceiling after a 1e-9 relative downward nudge, so that values a hair above
// an integer due to rounding do not spill into the next one.
long ceil_nudged(double x) {
  double nudged = x - std::abs(x) * 1e-9;
  double c = std::ceil(nudged);
  return static_cast<long>(c);
}

}  // namespace

void StructureConstants::validate() const {
  auto finite_nonneg = [](double v) { return std::isfinite(v) && v >= 0; };
  if (!finite_nonneg(A_norm) || !finite_nonneg(L_f) || !finite_nonneg(sigma2)) {
    throw std::invalid_argument("StructureConstants: A_norm, L_f, sigma2 must be finite, >= 0");
  }
  if (!(Omega > 0) || !std::isfinite(Omega) || !(sigma_omega > 0) || !std::isfinite(sigma_omega)) {
    throw std::invalid_argument("StructureConstants: Omega and sigma_omega must be positive");
  }
}

long iteration_budget(double eps, const StructureConstants& c, const ProxSetup& prox) {
  if (!(eps > 0)) throw std::invalid_argument("iteration_budget: eps must be positive");
  c.validate();
  const double term_ns = 4.0 * k6ms2 * prox.D * c.Omega * c.A_norm * c.A_norm /
                         (prox.sigma_d * c.sigma_omega * eps * eps);
  const double term_smooth = 2.0 * k6ms2 * c.L_f * prox.D / (prox.sigma_d * eps);
  long n_plus_1 = ceil_nudged(term_ns + term_smooth);
  if (n_plus_1 < 1) n_plus_1 = 1;
  return n_plus_1 - 1;
}

long batch_size(long N, const StructureConstants& c) {
  if (N < 0) throw std::invalid_argument("batch_size: N must be >= 0");
  c.validate();
  if (c.A_norm == 0) throw std::invalid_argument("batch_size: degenerate linear operator (||A|| = 0)");
  const double raw = std::sqrt(2.0) * c.sigma2 * c.sigma_omega *
                     std::sqrt(static_cast<double>(N + 1)) /
                     (c.A_norm * c.A_norm * c.Omega);
  long m = ceil_nudged(raw);
  if (m < 1) m = 1;
  return m;
}

double smoothing_parameter(long N, long m, const StructureConstants& c, const ProxSetup& prox) {
  if (N < 0) throw std::invalid_argument("smoothing_parameter: N must be >= 0");
  if (m < 1) throw std::invalid_argument("smoothing_parameter: m must be >= 1");
  c.validate();
  if (c.A_norm == 0) {
    throw std::invalid_argument("smoothing_parameter: degenerate linear operator (||A|| = 0)");
  }
  const double a2 = c.A_norm * c.A_norm;
  const double md = static_cast<double>(m);
  const double np1 = static_cast<double>(N + 1);
  const double numer = a2 * std::sqrt(k6ms2 * md * prox.D);
  const double denom = std::sqrt(2.0 * np1 * prox.sigma_d * c.sigma_omega) *
                       std::sqrt(md * a2 * c.Omega +
                                 std::sqrt(2.0 * np1) * c.sigma_omega * c.sigma2);
  const double mu = numer / denom;
  if (!(mu > 0) || !std::isfinite(mu)) {
    throw std::invalid_argument("smoothing_parameter: produced non-positive mu");
  }
  return mu;
}

std::pair<double, double> lipschitz_total(double mu, const StructureConstants& c) {
  if (!(mu > 0)) throw std::invalid_argument("lipschitz_total: mu must be positive");
  c.validate();
  const double l_h = c.A_norm * c.A_norm / (mu * c.sigma_omega);
  return {l_h, c.L_f + l_h};
}

SmoothingParams make_smoothing_params(long N, long m, double mu, const StructureConstants& c) {
  auto [l_h, l_total] = lipschitz_total(mu, c);
  if (N < 0 || m < 1) throw std::invalid_argument("make_smoothing_params: bad N or m");
  return SmoothingParams{mu, l_h, l_total, N, m};
}

}  // namespace msns
