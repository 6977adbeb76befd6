#include <benchmark/benchmark.h>

#include "subplanck/loci.hpp"
#include "subplanck/metrics.hpp"
#include "subplanck/oracle.hpp"
#include "subplanck/phase_space.hpp"
#include "subplanck/state.hpp"

namespace {

using namespace subplanck;

void BM_Displace(benchmark::State& state) {
  const FockVector psi = build_state(StateSpec::cat(1.5, 0), static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(displace(psi, Complex(0.7, -0.4)));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Displace)->RangeMultiplier(2)->Range(32, 512)->Complexity();

void BM_MakeState(benchmark::State& state) {
  const StateSpec spec = StateSpec::ssd(0.6, Complex(1.8, 0.0)).with_added(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(make_state(spec));
  }
}
BENCHMARK(BM_MakeState)->Unit(benchmark::kMillisecond);

void BM_Qfi(benchmark::State& state) {
  const FockVector psi = make_state(StateSpec::ks_plus(2.0, 1).with_added(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(qfi_displacement(psi, 0.3));
  }
}
BENCHMARK(BM_Qfi);

void BM_CrossTerm(benchmark::State& state) {
  CrossTermParams p;
  p.n = static_cast<int>(state.range(0));
  p.m = static_cast<int>(state.range(0));
  p.r1 = 0.3;
  p.r2 = -0.2;
  p.alpha = Complex(0.8, 0.1);
  p.beta = Complex(-0.4, 0.6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cross_term(p));
  }
}
BENCHMARK(BM_CrossTerm)->DenseRange(0, 6, 2);

void BM_FirstZero(benchmark::State& state) {
  const FockVector psi = make_state(StateSpec::cat(2.0, 0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(first_zero(psi, 1.0));
  }
}
BENCHMARK(BM_FirstZero)->Unit(benchmark::kMillisecond);

void BM_CentralFringeArea(benchmark::State& state) {
  const FockVector psi = make_state(StateSpec::cat(2.0, 0));
  FringeOptions opts;
  opts.n_directions = 32;
  for (auto _ : state) {
    benchmark::DoNotOptimize(central_fringe_area(psi, opts).cfa);
  }
}
BENCHMARK(BM_CentralFringeArea)->Unit(benchmark::kSecond)->Iterations(1);

void BM_LocusSlice(benchmark::State& state) {
  LocusConfig cfg = LocusConfig::defaults(PairLabel::prstrg2);
  cfg.n_values = {1};
  cfg.r = {0.2, 0.2, 0.02};
  cfg.alpha = {0.5, 1.5, 0.25};
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_equal_qfi(cfg).points.size());
  }
}
BENCHMARK(BM_LocusSlice)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
