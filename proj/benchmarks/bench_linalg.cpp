#include <benchmark/benchmark.h>

#include "lpf/linalg.hpp"

namespace {

lpf::ComplexMatrix random_matrix(std::size_t n, lpf::Rng& rng) {
  lpf::ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = lpf::standard_complex_normal(rng);
  return m;
}

void BM_LuFactorSolve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  lpf::Rng rng(1);
  const lpf::ComplexMatrix a = random_matrix(n, rng);
  lpf::ComplexVector rhs(n, lpf::Complex(1.0, 0.0));
  lpf::LuDecomposition lu;
  for (auto _ : state) {
    lu.try_factor(a);
    lpf::ComplexVector x = rhs;
    lu.solve_in_place(x);
    benchmark::DoNotOptimize(x.data());
  }
}
BENCHMARK(BM_LuFactorSolve)->Arg(4)->Arg(8)->Arg(14);

}  // namespace
