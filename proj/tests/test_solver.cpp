#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "helpers.hpp"
#include "msns/duality.hpp"
#include "msns/solver.hpp"
#include "msns/svm.hpp"

using namespace msns;
using test::make_dataset;
using test::vec2;

namespace {

// Deterministic oracle evaluating the whole training set every call.
class FullBatchOracle final : public StochasticOracle {
 public:
  FullBatchOracle(const Dataset& train, const Matrix& sigma, double lambda1, double mu)
      : oracle_(train, sigma, lambda1, mu) {
    indices_.resize(static_cast<std::size_t>(train.size()));
    std::iota(indices_.begin(), indices_.end(), 0L);
  }
  OracleBatch sample_batch(const Vector& x, long m, Engine&) const override {
    OracleBatch batch = oracle_.batch_at(x, indices_);
    batch.m = m;
    return batch;
  }
  long dim() const override { return oracle_.dim(); }

 private:
  SvmOracle oracle_;
  std::vector<long> indices_;
};

MsnsState state_with(Vector x, Vector g, double l) {
  MsnsState s;
  s.x = std::move(x);
  s.G = std::move(g);
  s.L = l;
  return s;
}

}  // namespace

TEST_CASE("y_step: zero gradient keeps the iterate") {
  const ProxSetup prox = ProxSetup::euclidean(BallSet(25.0, 2));
  MsnsState state = state_with(vec2(1, 2), Vector::Zero(2), 1.0);
  OracleBatch batch{0.0, Vector::Zero(2), 0.0, 1};
  CHECK(y_step(state, batch, schedule_at(0, 1.0), prox) == vec2(1, 2));
}

TEST_CASE("y_step: k=0 interior step of length gamma_0 = sqrt(2)") {
  const ProxSetup prox = ProxSetup::euclidean(BallSet(25.0, 2));
  MsnsState state = state_with(Vector::Zero(2), Vector::Zero(2), 1.0);
  OracleBatch batch{0.0, vec2(1, 0), 0.0, 1};
  const Vector y = y_step(state, batch, schedule_at(0, 1.0), prox);
  CHECK(y[0] == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-15));
  CHECK(y[1] == 0.0);

  // grid argmin of the linearized model l0
  auto obj = [&](const Vector& p) {
    return batch.grad.dot(p - state.x) + p.squaredNorm() / (2 * std::sqrt(2.0));
  };
  auto [grid_best, grid_val] = test::grid_argmin_ball(BallSet(25.0, 2), 5e-3, obj);
  CHECK(obj(y) <= grid_val + 1e-12);
}

TEST_CASE("y_step: boundary case matches the grid argmin") {
  std::mt19937_64 rng(29);
  std::normal_distribution<double> normal(0, 1);
  for (int trial = 0; trial < 10; ++trial) {
    const double r = 0.6 + 0.1 * trial;
    const BallSet set(r * r, 2);
    const ProxSetup prox = ProxSetup::euclidean(set);
    Engine ball_rng(rng());
    MsnsState state = state_with(sample_ball_radial(set.radius_sq, 2, ball_rng),
                                 Vector::Zero(2), 0.5 + 0.2 * trial);
    // gradient scaled so x - gamma g typically leaves the ball
    OracleBatch batch{0.0, vec2(normal(rng) * 4, normal(rng) * 4), 0.0, 1};
    const Schedule sched = schedule_at(trial, state.L);
    const Vector y = y_step(state, batch, sched, prox);
    CHECK(set.contains(y));
    auto obj = [&](const Vector& p) {
      return batch.grad.dot(p - state.x) + (p - state.x).squaredNorm() / (2 * sched.gamma_k);
    };
    auto [grid_best, grid_val] = test::grid_argmin_ball(set, 1e-3, obj);
    CHECK(obj(y) <= grid_val + 1e-12);
    CHECK(grid_val - obj(y) <= 1e-6);
  }
}

TEST_CASE("z_step: zero accumulator returns the prox-center") {
  const ProxSetup prox = ProxSetup::euclidean(BallSet(1.0, 2));
  CHECK(z_step(state_with(vec2(0, 0), Vector::Zero(2), 1.0), prox) == Vector::Zero(2));
}

TEST_CASE("z_step: projected and interior closed forms") {
  const ProxSetup prox = ProxSetup::euclidean(BallSet(1.0, 2));
  const Vector z1 = z_step(state_with(vec2(0, 0), vec2(2, 0), 1.0), prox);
  CHECK(z1[0] == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(z1[1] == 0.0);

  const Vector z2 = z_step(state_with(vec2(0, 0), vec2(2, 0), 10.0), prox);
  CHECK(z2[0] == doctest::Approx(-0.2).epsilon(1e-15));

  CHECK_THROWS_AS(z_step(state_with(vec2(0, 0), vec2(1, 0), 0.0), prox),
                  std::invalid_argument);
}

TEST_CASE("z_step: matches the grid argmin of the dual-averaging objective") {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> normal(0, 1);
  for (int trial = 0; trial < 10; ++trial) {
    const double r = 0.5 + 0.1 * trial;
    const BallSet set(r * r, 2);
    const ProxSetup prox = ProxSetup::euclidean(set);
    const double l = 0.5 + 0.3 * trial;
    const Vector g = vec2(normal(rng), normal(rng));
    const Vector z = z_step(state_with(vec2(0, 0), g, l), prox);
    CHECK(set.contains(z));
    auto obj = [&](const Vector& p) {
      return (l / prox.sigma_d) * 0.5 * p.squaredNorm() + g.dot(p);
    };
    auto [grid_best, grid_val] = test::grid_argmin_ball(set, 1e-3, obj);
    CHECK(obj(z) <= grid_val + 1e-12);
    CHECK(grid_val - obj(z) <= 1e-6);
  }
}

TEST_CASE("x_step: convex combinations") {
  CHECK(x_step(vec2(1, 1), vec2(1, 1), 0.25) == vec2(1, 1));
  const Vector x = x_step(vec2(1, 0), vec2(0, 1), 0.5);
  CHECK(x == vec2(0.5, 0.5));

  // k = 98: tau = 1/100
  const Vector big = x_step(vec2(1, 0), vec2(0, 1), 0.01);
  CHECK(big[0] == doctest::Approx(0.01).epsilon(1e-15));
  CHECK(big[1] == doctest::Approx(0.99).epsilon(1e-15));

  CHECK_THROWS_AS(x_step(vec2(1, 0), Vector::Zero(3), 0.5), std::invalid_argument);
  CHECK_THROWS_AS(x_step(vec2(1, 0), vec2(0, 1), 0.0), std::invalid_argument);
}

TEST_CASE("msns_run: zero-gradient oracle returns x0 after a single step") {
  const ProxSetup prox = ProxSetup::euclidean(BallSet(4.0, 2));
  const test::ZeroOracle oracle(2);
  const SmoothingParams params{1.0, 1.0, 1.0, 0, 1};
  const RunReport report = msns_run(oracle, prox, params, vec2(0.5, -0.5), 1);
  CHECK(report.x_hat == vec2(0.5, -0.5));
  CHECK(report.oracle_calls == 1);
  CHECK(report.u_hat == 0.0);
}

TEST_CASE("msns_run: tiny separable SVM decreases the smoothed objective") {
  const Dataset train = make_dataset({{1.2, 0.1}, {0.9, -0.3}, {-1.1, 0.2}, {-0.8, 0.4}},
                                     {1, 1, -1, -1});
  const Matrix sigma = covariance(train);
  const double lambda1 = 0.5;
  const double mu = 0.2;
  const FullBatchOracle oracle(train, sigma, lambda1, mu);
  const ProxSetup prox = ProxSetup::euclidean(BallSet(10.0, 2));

  StructureConstants c;
  c.A_norm = estimate_A_norm(train);
  c.Omega = 0.5;
  c.sigma_omega = 1.0;
  c.L_f = estimate_Lf(lambda1, sigma);
  const SmoothingParams params = make_smoothing_params(60, 1, mu, c);

  const Vector x0 = Vector::Zero(2);
  const RunReport report = msns_run(oracle, prox, params, x0, 3);
  const double before = smoothed_objective(x0, train, lambda1, sigma, mu);
  const double after = smoothed_objective(report.x_hat, train, lambda1, sigma, mu);
  CHECK(after <= before);
  CHECK(report.u_hat >= 0.0);
  CHECK(report.u_hat <= 1.0);
  CHECK(prox.set.contains(report.x_hat));
}

TEST_CASE("msns_run: bit-reproducible under a fixed seed, exact call accounting") {
  const SyntheticData data = generate_synthetic(6, 120, 10, 4.0, 55);
  const Matrix sigma = covariance(data.train);
  const SvmOracle oracle(data.train, sigma, 0.5, 0.1);
  const ProxSetup prox = ProxSetup::euclidean(BallSet(4.0, 6));
  const SmoothingParams params{0.1, 10.0, 10.5, 37, 4};

  const RunReport a = msns_run(oracle, prox, params, Vector::Zero(6), 42, 5);
  const RunReport b = msns_run(oracle, prox, params, Vector::Zero(6), 42, 5);
  CHECK(a.x_hat == b.x_hat);  // bitwise
  CHECK(a.u_hat == b.u_hat);
  CHECK(a.oracle_calls == b.oracle_calls);
  CHECK(a.oracle_calls == 38 * 4);

  const RunReport c = msns_run(oracle, prox, params, Vector::Zero(6), 43, 5);
  CHECK(a.x_hat != c.x_hat);

  // trace: monotone oracle_calls, stride rows plus the final iterate
  REQUIRE(!a.trace.empty());
  for (std::size_t i = 1; i < a.trace.size(); ++i) {
    CHECK(a.trace[i].oracle_calls > a.trace[i - 1].oracle_calls);
  }
  CHECK(a.trace.back().k == 37);
  CHECK(a.trace.back().oracle_calls == a.oracle_calls);
}

TEST_CASE("msns_run: rejects infeasible starts and propagates oracle failures") {
  const ProxSetup prox = ProxSetup::euclidean(BallSet(1.0, 2));
  const test::ZeroOracle oracle(2);
  const SmoothingParams params{1.0, 1.0, 1.0, 0, 1};
  CHECK_THROWS_AS(msns_run(oracle, prox, params, vec2(3, 0), 1), std::invalid_argument);

  class FailingOracle final : public StochasticOracle {
   public:
    OracleBatch sample_batch(const Vector&, long, Engine&) const override {
      throw std::runtime_error("backing store unavailable");
    }
    long dim() const override { return 2; }
  };
  CHECK_THROWS_WITH_AS(msns_run(FailingOracle{}, prox, params, vec2(0, 0), 1),
                       doctest::Contains("iteration 0"), SolverError);
}

TEST_CASE("dual_value: zero multiplier gives zero for a PSD quadratic") {
  const Dataset d = make_dataset({{1, 0}, {0, 1}}, {1, -1});
  const Matrix sigma = covariance(d);
  const ProxSetup prox = ProxSetup::euclidean(BallSet(4.0, 2));
  CHECK(dual_value(0.0, d, 0.7, sigma, prox) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("dual_value: linear objective over the unit ball") {
  const Dataset d = make_dataset({{1, 0}}, {1});
  const Matrix sigma = Matrix::Zero(2, 2);
  const ProxSetup prox = ProxSetup::euclidean(BallSet(1.0, 2));
  // min over the ball of 1 - x1 is 0, attained at e1
  CHECK(dual_value(1.0, d, 0.0, sigma, prox) == doctest::Approx(0.0).epsilon(1e-7));
  CHECK_THROWS_AS(dual_value(1.5, d, 0.0, sigma, prox), std::invalid_argument);
}

TEST_CASE("duality_gap: vanishes at a hand-solved saddle point") {
  // samples z=2 (y=+1) and z=-2 (y=-1): both margins are 2x, Sigma = 4,
  // lambda1 = 0.1, ball |x| <= 1. Saddle: x* = 0.5, u* = 0.2, value 0.1.
  const Dataset d = make_dataset({{2}, {-2}}, {1, -1});
  const Matrix sigma = covariance(d);
  REQUIRE(sigma(0, 0) == doctest::Approx(4.0));
  const ProxSetup prox = ProxSetup::euclidean(BallSet(1.0, 1));

  CHECK(dual_value(0.2, d, 0.1, sigma, prox, 1e-10) == doctest::Approx(0.1).epsilon(1e-8));
  const double gap =
      duality_gap(Vector::Constant(1, 0.5), 0.2, d, 0.1, sigma, prox, 1e-10);
  CHECK(gap >= -1e-8);
  CHECK(gap <= 1e-6);
}

TEST_CASE("duality_gap: weak duality on arbitrary primal-dual pairs") {
  const SyntheticData data = generate_synthetic(4, 80, 10, 4.0, 13);
  const Matrix sigma = covariance(data.train);
  const ProxSetup prox = ProxSetup::euclidean(BallSet(4.0, 4));
  Engine rng(19);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Vector x = sample_ball_radial(4.0, 4, rng);
    const double u = unif(rng);
    CHECK(duality_gap(x, u, data.train, 0.5, sigma, prox) >= -1e-8);
  }
}
