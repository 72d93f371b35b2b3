#include "msns/svm.hpp"

#include <algorithm>
#include <cmath>

#include "msns/reduce.hpp"

namespace msns {

Matrix covariance(const Dataset& train) {
  if (train.size() < 1) throw DataError("covariance: empty dataset");
  const long ns = train.size();
  const long n = train.dim();
  Matrix sigma(n, n);
  sigma.setZero();
  sigma.selfadjointView<Eigen::Lower>().rankUpdate(train.features.transpose(),
                                                   1.0 / static_cast<double>(ns));
  sigma.triangularView<Eigen::StrictlyUpper>() = sigma.transpose();
  const Vector mean = train.features.colwise().sum().transpose() / static_cast<double>(ns);
  sigma.noalias() -= mean * mean.transpose();
  // keep it exactly symmetric after the rank-one downdate
  sigma = ((sigma + sigma.transpose()) * 0.5).eval();
  return sigma;
}

void SvmModel::validate() const {
  if (lambda1 < 0 || !std::isfinite(lambda1)) {
    throw std::invalid_argument("SvmModel: lambda1 must be finite, >= 0");
  }
  if (!(t > 0)) throw std::invalid_argument("SvmModel: t must be positive");
  if (Sigma.rows() != Sigma.cols()) throw std::invalid_argument("SvmModel: Sigma must be square");
  const double scale = std::max(1.0, Sigma.cwiseAbs().maxCoeff());
  if ((Sigma - Sigma.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::invalid_argument("SvmModel: Sigma must be symmetric");
  }
}

std::pair<double, Vector> f_value_grad(const Vector& x, double lambda1, const Matrix& Sigma) {
  if (x.size() != Sigma.rows()) throw std::invalid_argument("f_value_grad: dimension mismatch");
  Vector sx = Sigma * x;
  const double value = lambda1 * x.dot(sx);
  return {value, (2.0 * lambda1) * sx};
}

double hinge(double margin) { return std::max(0.0, 1.0 - margin); }

SmoothedHinge smoothed_hinge(double margin, double mu) {
  if (!(mu > 0)) throw std::invalid_argument("smoothed_hinge: mu must be positive");
  const double u = std::clamp((1.0 - margin) / mu, 0.0, 1.0);
  // value of u(1-s) - mu u^2/2 at the clipped maximizer; exact on each piece
  const double value = u * (1.0 - margin) - 0.5 * mu * u * u;
  return {value, u};
}

SvmOracle::SvmOracle(const Dataset& train, const Matrix& Sigma, double lambda1, double mu)
    : train_(train), Sigma_(Sigma), lambda1_(lambda1), mu_(mu) {
  if (!(mu > 0)) throw std::invalid_argument("SvmOracle: mu must be positive");
  if (lambda1 < 0) throw std::invalid_argument("SvmOracle: lambda1 must be >= 0");
  if (Sigma.rows() != train.dim()) throw std::invalid_argument("SvmOracle: Sigma/train mismatch");
}

OracleBatch SvmOracle::batch_at(const Vector& x, const std::vector<long>& indices) const {
  if (indices.empty()) throw std::invalid_argument("SvmOracle: empty batch");
  if (x.size() != train_.dim()) throw std::invalid_argument("SvmOracle: dimension mismatch");
  require_finite(x, "SvmOracle x");

  Vector sx = Sigma_ * x;
  const double f_value = lambda1_ * x.dot(sx);

  // Pairwise reduction with sequential 64-sample leaves: the combine tree is
  // a pure function of the batch size, so a parallel reducer splitting on
  // the same blocks reproduces it bitwise.
  constexpr std::size_t kLeaf = 64;
  PairwiseAccumulator<double> value_acc;
  PairwiseAccumulator<double> u_acc;
  PairwiseAccumulator<Vector> grad_acc;
  Vector block = Vector::Zero(x.size());
  std::size_t in_block = 0;
  for (long idx : indices) {
    const double margin = train_.labels[idx] * train_.features.row(idx).dot(x);
    const SmoothedHinge h = smoothed_hinge(margin, mu_);
    value_acc.add(h.value);
    u_acc.add(h.u);
    block.noalias() += (-h.u * train_.labels[idx]) * train_.features.row(idx).transpose();
    if (++in_block == kLeaf) {
      grad_acc.add(std::move(block));
      block = Vector::Zero(x.size());
      in_block = 0;
    }
  }
  if (in_block > 0) grad_acc.add(std::move(block));

  const double inv_m = 1.0 / static_cast<double>(indices.size());
  OracleBatch batch;
  batch.m = static_cast<long>(indices.size());
  batch.value = f_value + value_acc.total() * inv_m;
  batch.grad = (2.0 * lambda1_) * sx + grad_acc.total() * inv_m;
  batch.u_mean = u_acc.total() * inv_m;
  return batch;
}

OracleBatch SvmOracle::sample_batch(const Vector& x, long m, Engine& rng) const {
  if (m < 1) throw std::invalid_argument("SvmOracle: batch size must be >= 1");
  std::uniform_int_distribution<long> pick(0, train_.size() - 1);
  std::vector<long> indices(static_cast<std::size_t>(m));
  for (long j = 0; j < m; ++j) indices[static_cast<std::size_t>(j)] = pick(rng);
  return batch_at(x, indices);
}

double exact_objective(const Vector& x, const Dataset& data, double lambda1,
                       const Matrix& Sigma) {
  if (data.size() < 1) throw DataError("exact_objective: empty dataset");
  if (x.size() != data.dim()) throw std::invalid_argument("exact_objective: dimension mismatch");
  const Vector margins = data.labels.cwiseProduct(data.features * x);
  PairwiseAccumulator<double> acc;
  for (long i = 0; i < margins.size(); ++i) acc.add(hinge(margins[i]));
  return lambda1 * x.dot(Sigma * x) + acc.total() / static_cast<double>(data.size());
}

double smoothed_objective(const Vector& x, const Dataset& data, double lambda1,
                          const Matrix& Sigma, double mu) {
  if (data.size() < 1) throw DataError("smoothed_objective: empty dataset");
  const Vector margins = data.labels.cwiseProduct(data.features * x);
  PairwiseAccumulator<double> acc;
  for (long i = 0; i < margins.size(); ++i) acc.add(smoothed_hinge(margins[i], mu).value);
  return lambda1 * x.dot(Sigma * x) + acc.total() / static_cast<double>(data.size());
}

double estimate_A_norm(const Dataset& train) {
  if (train.size() < 1) throw DataError("estimate_A_norm: empty dataset");
  const Vector mean_neg_yz =
      -(train.features.transpose() * train.labels) / static_cast<double>(train.size());
  return mean_neg_yz.norm();
}

double gradient_variance_at(const Vector& x, const Dataset& train,
                            const std::vector<long>& sample_idx, double mu) {
  if (sample_idx.empty()) throw std::invalid_argument("gradient_variance_at: no samples");
  const long count = static_cast<long>(sample_idx.size());

  // Single-sample stochastic gradients differ only in the hinge term; the
  // deterministic f-part cancels in g_j - g_bar.
  std::vector<double> coeff(sample_idx.size());
  PairwiseAccumulator<Vector> mean_acc;
  for (std::size_t j = 0; j < sample_idx.size(); ++j) {
    const long idx = sample_idx[j];
    const double margin = train.labels[idx] * train.features.row(idx).dot(x);
    coeff[j] = -smoothed_hinge(margin, mu).u * train.labels[idx];
    mean_acc.add(Vector(coeff[j] * train.features.row(idx).transpose()));
  }
  const Vector g_bar = mean_acc.total() / static_cast<double>(count);

  PairwiseAccumulator<double> var_acc;
  for (std::size_t j = 0; j < sample_idx.size(); ++j) {
    const long idx = sample_idx[j];
    const Vector diff = coeff[j] * train.features.row(idx).transpose() - g_bar;
    var_acc.add(diff.squaredNorm());
  }
  return var_acc.total() / static_cast<double>(count);
}

double estimate_sigma2(const Dataset& train, double mu, double lambda1, const Matrix& Sigma,
                       const ProxSetup& prox, std::uint64_t seed) {
  if (train.size() < 1) throw DataError("estimate_sigma2: empty dataset");
  if (!(mu > 0)) throw std::invalid_argument("estimate_sigma2: mu must be positive");
  (void)lambda1;
  (void)Sigma;

  constexpr long kPoints = 100;
  const long per_point = (train.size() + 99) / 100;  // ceil(NS/100)

  Engine rng = make_engine(seed);
  std::uniform_int_distribution<long> pick(0, train.size() - 1);
  PairwiseAccumulator<double> acc;
  std::vector<long> idx(static_cast<std::size_t>(per_point));
  for (long p = 0; p < kPoints; ++p) {
    const Vector point = sample_ball_radial(prox.set.radius_sq, train.dim(), rng);
    for (long j = 0; j < per_point; ++j) idx[static_cast<std::size_t>(j)] = pick(rng);
    acc.add(gradient_variance_at(point, train, idx, mu));
  }
  return acc.total() / static_cast<double>(kPoints);
}

double lambda_max(const Matrix& Sigma, double rel_tol, long max_iter, std::uint64_t seed) {
  if (Sigma.rows() != Sigma.cols()) throw std::invalid_argument("lambda_max: non-square matrix");
  const long n = Sigma.rows();
  Engine rng = make_engine(seed);
  Vector v = sample_unit_direction(n, rng);

  double lam = 0;
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (long it = 0; it < max_iter; ++it) {
    Vector w = Sigma * v;
    const double wn = w.norm();
    if (wn == 0) return 0.0;
    lam = v.dot(w);
    v = w / wn;
    if (std::isfinite(prev) && std::abs(lam - prev) <= rel_tol * std::max(std::abs(lam), 1e-300)) {
      return lam;
    }
    prev = lam;
  }
  throw SolverError("lambda_max: power iteration did not converge in " +
                    std::to_string(max_iter) + " iterations");
}

double estimate_Lf(double lambda1, const Matrix& Sigma, double rel_tol) {
  if (lambda1 < 0) throw std::invalid_argument("estimate_Lf: lambda1 must be >= 0");
  if (lambda1 == 0) return 0.0;
  return 2.0 * lambda1 * lambda_max(Sigma, rel_tol);
}

double predict_accuracy(const Vector& x, const Dataset& test) {
  if (test.size() < 1) throw DataError("predict_accuracy: empty test set");
  if (x.size() != test.dim()) throw std::invalid_argument("predict_accuracy: dimension mismatch");
  const Vector scores = test.features * x;
  long correct = 0;
  for (long i = 0; i < test.size(); ++i) {
    const double predicted = scores[i] >= 0 ? 1.0 : -1.0;  // sign(0) -> +1
    if (predicted == test.labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(test.size());
}

}  // namespace msns
