#include <complex>
#include <random>

#include <benchmark/benchmark.h>

#include "ghmc/ghmc_operator.hpp"
#include "ghmc/random_targets.hpp"
#include "ghmc/sampler.hpp"
#include "ghmc/univariate.hpp"

namespace {

using namespace ghmc;

SpdMatrix diagonal(long d, double lo, double hi) {
  Vector v(d);
  for (long i = 0; i < d; ++i) v(i) = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(std::max(d - 1, 1L));
  return SpdMatrix(v.asDiagonal().toDenseMatrix());
}

GhmcStep make_step(long d) {
  return GhmcStep(GaussianParams(Vector::Ones(d), diagonal(d, 0.5, 2.0)),
                  GaussianParams(Vector::Zero(d), diagonal(d, 1.0, 1.5)), 0.8);
}

void BM_FlowMatrices(benchmark::State& state) {
  const long d = state.range(0);
  const SpdMatrix f = diagonal(d, 0.5, 2.0);
  const SpdMatrix g = diagonal(d, 1.0, 1.5);
  for (auto _ : state) benchmark::DoNotOptimize(flow_matrices(f, g, 0.8));
}
BENCHMARK(BM_FlowMatrices)->Arg(1)->Arg(4)->Arg(16)->Arg(64);

void BM_GhmcStep(benchmark::State& state) {
  const long d = state.range(0);
  const GhmcStep step = make_step(d);
  const GaussianParams h(Vector::Constant(d, 3.0), diagonal(d, 0.2, 4.0));
  for (auto _ : state) benchmark::DoNotOptimize(ghmc_step(step, h));
}
BENCHMARK(BM_GhmcStep)->Arg(1)->Arg(4)->Arg(16)->Arg(64);

void BM_SampleStep(benchmark::State& state) {
  const long n = state.range(0);
  const GhmcStep step = make_step(3);
  const SampleBatch q = sample_gaussian(GaussianParams(Vector::Zero(3), diagonal(3, 1.0, 2.0)), n, RngStream(1));
  for (auto _ : state) benchmark::DoNotOptimize(ghmc_sample_step(step, q, RngStream(2)));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_SampleStep)->Arg(1 << 14)->Arg(1 << 18);

void BM_PsiLimit(benchmark::State& state) {
  const UnivariateMixture mix({{0.5, -1.0, 1.0}, {0.5, 1.0, 1.0}}, state.range(0) / 100.0);
  const double xi = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(psi_limit(mix, xi, std::complex<double>(0.0, 0.5), 1e-15));
}
BENCHMARK(BM_PsiLimit)->Arg(50)->Arg(90)->Arg(99);

void BM_HullDistance(benchmark::State& state) {
  const long d = state.range(0);
  std::vector<MixtureComponent> comps;
  for (int j = 0; j < 3; ++j) comps.push_back({1.0 / 3.0, Vector::Constant(d, j - 1.0), diagonal(d, 0.5 + j, 1.0 + j)});
  const TargetMixture mix(comps, GaussianParams(Vector::Zero(d), diagonal(d, 1.0, 1.0)), FixedTime{0.7});
  const ConvexHullSpec spec = ConvexHullSpec::from_mixture(mix);
  const GaussianParams state_h(Vector::Constant(d, 5.0), diagonal(d, 6.0, 9.0));
  for (auto _ : state) benchmark::DoNotOptimize(hull_distance(spec, state_h));
}
BENCHMARK(BM_HullDistance)->Arg(1)->Arg(3);

}  // namespace
BENCHMARK_MAIN();
