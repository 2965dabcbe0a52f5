#include <benchmark/benchmark.h>

#include "lpf/baseline.hpp"
#include "lpf/errors.hpp"

namespace {

void BM_KacExpected(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lpf::kac_expected(n));
}
BENCHMARK(BM_KacExpected)->Arg(12)->Arg(54);

void BM_SturmCount(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  lpf::Rng rng(7);
  std::size_t degenerate = 0;
  for (auto _ : state) {
    const lpf::RealPolynomial p = lpf::random_polynomial(n, rng);
    try {
      benchmark::DoNotOptimize(lpf::sturm_real_root_count(p));
    } catch (const lpf::SturmDegeneracyError&) {
      ++degenerate;
    }
  }
  state.counters["degenerate"] = static_cast<double>(degenerate);
}
BENCHMARK(BM_SturmCount)->Arg(12)->Arg(28)->Arg(54);

}  // namespace
