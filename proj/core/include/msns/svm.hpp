#pragma once

#include <utility>
#include <vector>

#include "msns/ball.hpp"
#include "msns/dataset.hpp"
#include "msns/oracle.hpp"

namespace msns {

// Regularized hinge-loss SVM over a norm ball:
//   min_{||x||^2 <= t}  lambda1 x' Sigma x + E[ max{0, 1 - y <x,z>} ].

// Sigma = (1/NS) sum z z' - (1/NS^2) (sum z)(sum z)'. Biased normalization.
Matrix covariance(const Dataset& train);

struct SvmModel {
  double lambda1;
  double t;  // ball radius squared
  Matrix Sigma;
  const Dataset* train;

  void validate() const;
};

// f(x) = lambda1 x' Sigma x, grad = 2 lambda1 Sigma x.
std::pair<double, Vector> f_value_grad(const Vector& x, double lambda1, const Matrix& Sigma);

double hinge(double margin);  // max{0, 1 - s}

// max_{0<=u<=1} { u (1-s) - mu u^2 / 2 }:
//   value = 0                  if s > 1
//           (1-s)^2 / (2 mu)   if 1 - mu <= s <= 1
//           1 - s - mu/2       if s < 1 - mu
//   maximizer u = clip((1-s)/mu, 0, 1).
struct SmoothedHinge {
  double value;
  double u;
};
SmoothedHinge smoothed_hinge(double margin, double mu);

// Stochastic oracle drawing samples uniformly with replacement from the
// training set. Per sample, grad = 2 lambda1 Sigma x + u * (-y z).
class SvmOracle final : public StochasticOracle {
 public:
  SvmOracle(const Dataset& train, const Matrix& Sigma, double lambda1, double mu);

  OracleBatch sample_batch(const Vector& x, long m, Engine& rng) const override;
  long dim() const override { return train_.dim(); }

  // Deterministic aggregate over an explicit index set (test/eval hook).
  OracleBatch batch_at(const Vector& x, const std::vector<long>& indices) const;

  double mu() const { return mu_; }

 private:
  const Dataset& train_;
  const Matrix& Sigma_;
  double lambda1_;
  double mu_;
};

// lambda1 x' Sigma x + (1/NS) sum max{0, 1 - y_i z_i' x}.
double exact_objective(const Vector& x, const Dataset& data, double lambda1,
                       const Matrix& Sigma);
// Same with the smoothed hinge at parameter mu.
double smoothed_objective(const Vector& x, const Dataset& data, double lambda1,
                          const Matrix& Sigma, double mu);

// ||A|| for the rank-one row map A = mean(-y z'): the Euclidean norm of the
// mean vector.
double estimate_A_norm(const Dataset& train);

// Mean of ||g_j - g_bar||^2 over the given single-sample stochastic
// gradients at x. The deterministic f-part cancels in g_j - g_bar, so only
// the hinge parts enter.
double gradient_variance_at(const Vector& x, const Dataset& train,
                            const std::vector<long>& sample_idx, double mu);

// 100 evaluation points radial-uniform in the ball; at each point
// ceil(NS/100) single-sample gradients drawn uniformly with replacement;
// returns the average of the per-point variances.
double estimate_sigma2(const Dataset& train, double mu, double lambda1, const Matrix& Sigma,
                       const ProxSetup& prox, std::uint64_t seed);

// Largest eigenvalue by power iteration with a seeded start vector.
double lambda_max(const Matrix& Sigma, double rel_tol = 1e-10, long max_iter = 10000,
                  std::uint64_t seed = 0x6a09e667f3bcc909ULL);

// L_f = 2 lambda1 lambda_max(Sigma).
double estimate_Lf(double lambda1, const Matrix& Sigma, double rel_tol = 1e-10);

// Fraction of test samples with sign(<x,z>) == y; sign(0) counts as +1.
double predict_accuracy(const Vector& x, const Dataset& test);

}  // namespace msns
