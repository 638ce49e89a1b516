#include <benchmark/benchmark.h>

#include "kmeff/harness.h"
#include "kmeff/linalg.h"
#include "kmeff/random.h"
#include "kmeff/slgroup.h"

namespace kmeff {
namespace {

void BM_HaarOrthogonal(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(linalg::haar_orthogonal(n, rng));
}
BENCHMARK(BM_HaarOrthogonal)->Arg(2)->Arg(3)->Arg(6);

void BM_MatLog(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(2);
  linalg::Matrix x(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) x(i, j) = standard_normal(rng);
  }
  x *= 0.3 / linalg::frobenius_norm(x);
  const linalg::Matrix m = linalg::mat_exp(x);
  for (auto _ : state) benchmark::DoNotOptimize(linalg::mat_log(m));
}
BENCHMARK(BM_MatLog)->Arg(2)->Arg(3)->Arg(4);

// Thin models: the conjugator spread controls how far the enumeration runs.
void BM_DiscretenessRadius(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto sp = slgroup::expanding_element(n, 100.0, 0.1);
  const auto rp = slgroup::radius_params(sp);
  Rng rng(3);
  std::vector<slgroup::DiscreteGroupModel> models;
  for (int i = 0; i < 64; ++i) {
    models.emplace_back(slgroup::normalized_conjugator(
        harness::sample_base_conjugator(n, rp.rho, rng)));
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(slgroup::discreteness_radius(models[i++ % models.size()], rp));
  }
}
BENCHMARK(BM_DiscretenessRadius)->Arg(2)->Arg(3);

void BM_SampleMuS(benchmark::State& state) {
  const auto sp = slgroup::expanding_element(static_cast<int>(state.range(0)), 100.0, 0.1);
  Rng rng(4);
  for (auto _ : state) benchmark::DoNotOptimize(slgroup::sample_mu_s(sp, rng));
}
BENCHMARK(BM_SampleMuS)->Arg(2)->Arg(3);

}  // namespace
}  // namespace kmeff

BENCHMARK_MAIN();
