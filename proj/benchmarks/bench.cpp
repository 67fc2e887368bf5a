#include <benchmark/benchmark.h>

#include "hodgelab/catalog.hpp"
#include "hodgelab/frolicher.hpp"
#include "hodgelab/spectral.hpp"

namespace {

using namespace hodgelab;

void BM_LaplacianSpectrum(benchmark::State& state) {
  BigradedComplex c = iwasawa();
  HermitianMetric g = random_metric(c, 7);
  auto frame = std::make_shared<const OrthoFrame>(c, g);
  DhOperator dh = build_dh(frame, 0.5);
  int k = int(state.range(0));
  for (auto _ : state) {
    SpectralData s(dh, k);
    benchmark::DoNotOptimize(s.eigenvalues().data());
  }
}
BENCHMARK(BM_LaplacianSpectrum)->Arg(1)->Arg(2)->Arg(3);

void BM_ExactRank(benchmark::State& state) {
  BigradedComplex c = iwasawa();
  TotalComplexView v(c);
  int k = int(state.range(0));
  for (auto _ : state) {
    int r = v.d(k).rank();
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_ExactRank)->Arg(2)->Arg(3);

void BM_QInjection(benchmark::State& state) {
  BigradedComplex c = kodaira_thurston();
  HermitianMetric g = random_metric(c, 11);
  for (auto _ : state) {
    InjectionWitness w = q_injection(c, g, 1.0 / 16, 2);
    benchmark::DoNotOptimize(w.sigma_min);
  }
}
BENCHMARK(BM_QInjection);

void BM_SweepPoint(benchmark::State& state) {
  BigradedComplex c = iwasawa();
  HermitianMetric g = HermitianMetric::identity(c);
  for (auto _ : state) {
    SweepRecord rec = h_sweep(c, g, 1, {0.25}, 0.0, 0.5);
    benchmark::DoNotOptimize(rec.points.front().sigma_min);
  }
}
BENCHMARK(BM_SweepPoint);

void BM_InequalityChain(benchmark::State& state) {
  BigradedComplex c = iwasawa();
  for (auto _ : state) {
    InequalityReport r = frolicher_check(c);
    benchmark::DoNotOptimize(r.euler_residual.get_num().get_si());
  }
}
BENCHMARK(BM_InequalityChain);

}  // namespace

BENCHMARK_MAIN();
