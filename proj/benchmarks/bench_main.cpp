#include <benchmark/benchmark.h>

#include "ekv/oracle.hpp"
#include "ekv/space.hpp"
#include "ekv/strong.hpp"
#include "ekv/variational.hpp"

using namespace ekv;

namespace {

Objective objective_for(std::size_t n) {
  RandomObjectiveParams p;
  p.inf_fraction = 0.1;
  return random_objective(n, 99, p);
}

void BM_MinPlusClosure(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const FiniteSpace s = generate_random_qpm(n, 1);
  for (auto _ : state) {
    std::vector<double> m(s.matrix().begin(), s.matrix().end());
    min_plus_closure(m, n);
    benchmark::DoNotOptimize(m.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MinPlusClosure)->RangeMultiplier(2)->Range(8, 256)->Complexity(benchmark::oNCubed);

void BM_ValidateAxioms(benchmark::State& state) {
  const FiniteSpace s = generate_random_qpm(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(validate_axioms(s).valid());
}
BENCHMARK(BM_ValidateAxioms)->RangeMultiplier(2)->Range(8, 256);

void BM_EkelandPoint(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const FiniteSpace s = generate_random_qpm(n, 3);
  const Objective f = objective_for(n);
  const PointId x0 = f.domain().front();
  for (auto _ : state) benchmark::DoNotOptimize(ekeland_point(s, f, 1.0, 0.5, x0).z);
}
BENCHMARK(BM_EkelandPoint)->RangeMultiplier(2)->Range(8, 256);

void BM_OracleEkeland(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const FiniteSpace s = generate_random_qpm(n, 4);
  const Objective f = objective_for(n);
  const PointId x0 = f.domain().front();
  for (auto _ : state)
    benchmark::DoNotOptimize(oracle_ekeland_all(s, f, 1.0, 0.5, x0, {}, n).admissible.size());
}
BENCHMARK(BM_OracleEkeland)->RangeMultiplier(2)->Range(8, 128);

void BM_Georgiev(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const FiniteSpace s = generate_random_qpm(n, 5);
  const Objective f = objective_for(n);
  const PointId x0 = f.domain().front();
  for (auto _ : state) benchmark::DoNotOptimize(strong_ekeland_georgiev(s, f, 1.0, 0.5, x0).z);
}
BENCHMARK(BM_Georgiev)->RangeMultiplier(2)->Range(8, 256);

void BM_SimulateStrongMin(benchmark::State& state) {
  const FiniteSpace s = generate_random_qpm(8, 6);
  const Objective f = objective_for(8);
  const PointId z = strong_ekeland_suzuki(s, f, 1.0, f.domain().front()).z;
  for (auto _ : state) benchmark::DoNotOptimize(simulate_strong_min(s, f, 1.0, z, 10'000, 12, 7).ok());
}
BENCHMARK(BM_SimulateStrongMin)->Unit(benchmark::kMillisecond);

void BM_Falsify(benchmark::State& state) {
  FalsifyConfig cfg;
  cfg.budget = 200;
  cfg.jobs = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(falsify(cfg).instances_tested);
}
BENCHMARK(BM_Falsify)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
