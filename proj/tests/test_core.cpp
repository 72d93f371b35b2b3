#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "msns/ball.hpp"
#include "msns/schedule.hpp"

using namespace msns;
using test::vec2;

TEST_CASE("project: interior point is fixed") {
  BallSet set(25.0, 2);
  CHECK(project(set, vec2(1, 1)) == vec2(1, 1));
  CHECK(project(set, vec2(0, 0)) == vec2(0, 0));
}

TEST_CASE("project: exterior point scales radially") {
  BallSet set(25.0, 2);
  const Vector out = project(set, vec2(6, 8));
  CHECK(out[0] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(out[1] == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(out.norm() == doctest::Approx(5.0).epsilon(1e-14));

  // brute-force polar argmin of ||y - p||^2 confirms the KKT point
  auto [grid_best, grid_val] = test::grid_argmin_ball(set, 1e-3, [&](const Vector& y) {
    return (y - vec2(6, 8)).squaredNorm();
  });
  CHECK((out - vec2(6, 8)).squaredNorm() <= grid_val + 1e-12);
  CHECK((grid_best - out).norm() < 5e-3);
}

TEST_CASE("project: rejects bad input") {
  BallSet set(1.0, 2);
  CHECK_THROWS_AS(project(set, Vector::Zero(3)), std::invalid_argument);
  Vector bad = vec2(1, std::numeric_limits<double>::quiet_NaN());
  CHECK_THROWS_AS(project(set, bad), std::invalid_argument);
  CHECK_THROWS_AS(BallSet(0.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(BallSet(1.0, 0), std::invalid_argument);
}

TEST_CASE("project: idempotent and nonexpansive on random pairs") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal(0, 3);
  std::uniform_real_distribution<double> unif_t(0.1, 9.0);
  for (int trial = 0; trial < 1000; ++trial) {
    BallSet set(unif_t(rng), 2);
    const Vector p = vec2(normal(rng), normal(rng));
    const Vector q = vec2(normal(rng), normal(rng));
    const Vector pp = project(set, p);
    CHECK(project(set, pp) == pp);  // exact fixed point
    CHECK((project(set, p) - project(set, q)).norm() <= (p - q).norm() + 1e-12);
  }
}

TEST_CASE("prox_step: zero gradient leaves iterate fixed") {
  BallSet set(25.0, 2);
  const Vector x = vec2(1, 2);
  CHECK(prox_step(set, x, vec2(0, 0), 0.7) == x);
}

TEST_CASE("prox_step: interior unconstrained step") {
  BallSet set(25.0, 2);
  const Vector out = prox_step(set, vec2(0, 0), vec2(1, 0), 1.0);
  CHECK(out == vec2(-1, 0));

  auto [grid_best, grid_val] = test::grid_argmin_ball(set, 2e-3, [&](const Vector& y) {
    return vec2(1, 0).dot(y) + 0.5 * (y - vec2(0, 0)).squaredNorm();
  });
  const double closed_val = vec2(1, 0).dot(out) + 0.5 * out.squaredNorm();
  CHECK(closed_val <= grid_val + 1e-12);
  CHECK(grid_val - closed_val <= 1e-5);
}

TEST_CASE("prox_step: outward step from the boundary projects back") {
  BallSet set(25.0, 2);
  const Vector x = vec2(4, 3);
  const Vector g = vec2(-0.8, -0.6);  // points outward along x
  const Vector out = prox_step(set, x, g, 1.0);
  CHECK(out[0] == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(out[1] == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("prox_step: validates gamma and dimensions") {
  BallSet set(1.0, 2);
  CHECK_THROWS_AS(prox_step(set, vec2(0, 0), vec2(1, 0), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(prox_step(set, vec2(0, 0), vec2(1, 0), -1.0), std::invalid_argument);
  CHECK_THROWS_AS(prox_step(set, vec2(0, 0), Vector::Zero(3), 1.0), std::invalid_argument);
}

TEST_CASE("prox_step: output feasible, matches grid argmin on random instances") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal(0, 1);
  std::uniform_real_distribution<double> unif_r(0.5, 1.5);
  std::uniform_real_distribution<double> unif_gamma(0.5, 2.0);
  for (int trial = 0; trial < 12; ++trial) {
    const double r = unif_r(rng);
    BallSet set(r * r, 2);
    Engine ball_rng(rng());
    const Vector x = sample_ball_radial(set.radius_sq, 2, ball_rng);
    const Vector g = vec2(normal(rng), normal(rng));
    const double gamma = unif_gamma(rng);

    const Vector out = prox_step(set, x, g, gamma);
    CHECK(set.contains(out));

    auto obj = [&](const Vector& y) {
      return g.dot(y) + (y - x).squaredNorm() / (2 * gamma);
    };
    auto [grid_best, grid_val] = test::grid_argmin_ball(set, 1e-3, obj);
    CHECK(obj(out) <= grid_val + 1e-12);
    CHECK(grid_val - obj(out) <= 1e-6);
  }
}

TEST_CASE("generalized projected gradient: cases") {
  BallSet set(25.0, 2);
  CHECK(generalized_projected_gradient(set, vec2(1, 1), vec2(0, 0), 2.0) == vec2(0, 0));
  // interior: P = g
  CHECK(generalized_projected_gradient(set, vec2(0, 0), vec2(1, 0), 1.0) == vec2(1, 0));
  // outward step at the boundary yields zero projected gradient
  const Vector p = generalized_projected_gradient(set, vec2(4, 3), vec2(-0.8, -0.6), 1.0);
  CHECK(p.norm() == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("generalized projected gradient: nonexpansive in g") {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> normal(0, 2);
  std::uniform_real_distribution<double> unif_t(0.2, 16.0);
  std::uniform_real_distribution<double> unif_gamma(0.05, 5.0);
  for (int trial = 0; trial < 1000; ++trial) {
    BallSet set(unif_t(rng), 2);
    Engine ball_rng(rng());
    const Vector x = sample_ball_radial(set.radius_sq, 2, ball_rng);
    const Vector g1 = vec2(normal(rng), normal(rng));
    const Vector g2 = vec2(normal(rng), normal(rng));
    const double gamma = unif_gamma(rng);
    const Vector p1 = generalized_projected_gradient(set, x, g1, gamma);
    const Vector p2 = generalized_projected_gradient(set, x, g2, gamma);
    CHECK((p1 - p2).norm() <= (g1 - g2).norm() + 1e-12);
  }
}

TEST_CASE("schedule: values at k=0 and k=7") {
  const Schedule s0 = schedule_at(0, 1.0);
  CHECK(s0.alpha_k == 0.5);
  CHECK(s0.A_k == 0.5);
  CHECK(s0.tau_k == 0.5);
  CHECK(s0.gamma_k == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

  const Schedule s7 = schedule_at(7, 2.0);
  CHECK(s7.A_k == 4.0);
  CHECK(s7.tau_k == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
  CHECK(s7.gamma_k == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("schedule: condition alpha_{k+1}^2 <= sqrt(A_{k+1}) over a long range") {
  for (long k = 0; k <= 1000000; ++k) {
    const double a_next = 0.5 * static_cast<double>(k + 2);
    REQUIRE(0.25 <= std::sqrt(a_next));
    // A_k is the exact partial sum of the alphas
    if (k % 100000 == 0) {
      double acc = 0;
      for (long i = 0; i <= std::min<long>(k, 64); ++i) acc += 0.5;
      if (k <= 64) REQUIRE(acc == schedule_at(k, 1.0).A_k);
    }
  }
}

TEST_CASE("schedule: rejects bad arguments") {
  CHECK_THROWS_AS(schedule_at(-1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(schedule_at(0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(schedule_at(0, -2.0), std::invalid_argument);
}

TEST_CASE("prox setup: euclidean constants") {
  const ProxSetup prox = ProxSetup::euclidean(BallSet(25.0, 3));
  CHECK(prox.sigma_d == 1.0);
  CHECK(prox.D == 12.5);
  CHECK(prox.center == Vector::Zero(3));
}
