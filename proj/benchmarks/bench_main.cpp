#include <benchmark/benchmark.h>

#include <random>

#include "milnor/milnor.hpp"
#include "support/generators.hpp"
#include "support/germs.hpp"

namespace {

using namespace milnor;

void BM_PolynomialProduct(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto m = static_cast<std::size_t>(state.range(0));
  auto nonzero = [&] {
    Polynomial p(m);
    while (p.term_count() < 8) p = testing::random_polynomial(rng, m, 12, 4);
    return p;
  };
  const Polynomial a = nonzero();
  const Polynomial b = nonzero();
  state.counters["terms"] = static_cast<double>(a.term_count() * b.term_count());
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_PolynomialProduct)->Arg(2)->Arg(4);

void BM_CertifyIdentities(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::vector<testing::QHPair> pairs;
  for (int i = 0; i < 32; ++i) pairs.push_back(testing::random_qh_pair(rng));
  std::size_t k = 0;
  for (auto _ : state) {
    const auto& pair = pairs[k++ % pairs.size()];
    benchmark::DoNotOptimize(certify_identities(pair.germ, testing::to_weight_system(pair)));
  }
}
BENCHMARK(BM_CertifyIdentities);

void BM_InferWeights(benchmark::State& state) {
  const MapGerm d = testing::germ_d();
  for (auto _ : state) benchmark::DoNotOptimize(infer_weights(d, true));
}
BENCHMARK(BM_InferWeights);

void BM_CriticalPointsExample2(benchmark::State& state) {
  const MapGerm g = testing::germ_ex2();
  for (auto _ : state) {
    benchmark::DoNotOptimize(critical_points_on_sphere(g, 0.2, static_cast<std::size_t>(state.range(0)), 1));
  }
}
BENCHMARK(BM_CriticalPointsExample2)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_EquivalenceReport(benchmark::State& state) {
  const MapGerm d = testing::germ_d();
  for (auto _ : state) {
    benchmark::DoNotOptimize(equivalence_report(d, 1.0, 0.01, static_cast<std::size_t>(state.range(0)), 1));
  }
}
BENCHMARK(BM_EquivalenceReport)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_TimeToSphere(benchmark::State& state) {
  const WeightSystem ws({Rational(3), Rational(1), Rational(2), Rational(4)}, Rational(12));
  auto rng = stream_rng(5, 0);
  const Point x = uniform_ball_point(rng, 4, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(time_to_sphere(x, 1.0, ws));
}
BENCHMARK(BM_TimeToSphere);

}  // namespace

BENCHMARK_MAIN();
