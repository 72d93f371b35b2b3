#include <benchmark/benchmark.h>

#include "msns/solver.hpp"
#include "msns/svm.hpp"

using namespace msns;

namespace {

SyntheticData& shared_data() {
  static SyntheticData data = generate_synthetic(200, 4000, 100, 10.0, 9001);
  return data;
}

Matrix& shared_sigma() {
  static Matrix sigma = covariance(shared_data().train);
  return sigma;
}

void BM_project(benchmark::State& state) {
  const long n = state.range(0);
  const BallSet set(10.0, n);
  Engine rng(1);
  const Vector p = 3.0 * sample_unit_direction(n, rng) * set.radius();
  for (auto _ : state) {
    benchmark::DoNotOptimize(project(set, p));
  }
}
BENCHMARK(BM_project)->Arg(100)->Arg(1000);

void BM_oracle_batch(benchmark::State& state) {
  const long m = state.range(0);
  const SyntheticData& data = shared_data();
  const SvmOracle oracle(data.train, shared_sigma(), 0.5, 0.05);
  Engine rng(2);
  const Vector x = sample_ball_radial(10.0, data.train.dim(), rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle.sample_batch(x, m, rng));
  }
  state.SetItemsProcessed(state.iterations() * m);
}
BENCHMARK(BM_oracle_batch)->Arg(32)->Arg(256)->Arg(2048);

void BM_covariance(benchmark::State& state) {
  const SyntheticData& data = shared_data();
  for (auto _ : state) {
    benchmark::DoNotOptimize(covariance(data.train));
  }
}
BENCHMARK(BM_covariance);

void BM_msns_iteration(benchmark::State& state) {
  const SyntheticData& data = shared_data();
  const SvmOracle oracle(data.train, shared_sigma(), 0.5, 0.05);
  const ProxSetup prox = ProxSetup::euclidean(BallSet(10.0, data.train.dim()));
  const long iters = 8;
  const SmoothingParams params{0.05, 100.0, 100.5, iters - 1, 64};
  std::uint64_t seed = 3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(msns_run(oracle, prox, params, prox.center, seed++));
  }
  state.SetItemsProcessed(state.iterations() * iters);
}
BENCHMARK(BM_msns_iteration);

}  // namespace

BENCHMARK_MAIN();
