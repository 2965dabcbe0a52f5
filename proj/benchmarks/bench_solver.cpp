#include <map>
#include <string>

#include <benchmark/benchmark.h>

#include "lpf/distribution.hpp"
#include "lpf/solver.hpp"

namespace {

const lpf::StartSet& start_for(const lpf::Network& net) {
  static std::map<std::string, lpf::StartSet> cache;
  auto it = cache.find(net.describe());
  if (it == cache.end()) it = cache.emplace(net.describe(), lpf::build_start_set(net, 20240601)).first;
  return it->second;
}

lpf::Network network(int id) {
  switch (id) {
    case 0: return lpf::cycle_graph(4);
    case 1: return lpf::complete_graph(4);
    default: return lpf::cycle_graph(5);
  }
}

void BM_SolveAll(benchmark::State& state) {
  const lpf::Network net = network(static_cast<int>(state.range(0)));
  const lpf::StartSet& start = start_for(net);
  state.SetLabel(net.describe());
  std::uint64_t i = 0;
  for (auto _ : state) {
    lpf::Rng rng(lpf::derive_seed(3, i++));
    const auto b = lpf::sample_sphere(net.num_edges(), rng);
    benchmark::DoNotOptimize(lpf::solve_all(net, b, start, rng));
  }
}
BENCHMARK(BM_SolveAll)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_TotalDegree(benchmark::State& state) {
  const lpf::Network net = lpf::cycle_graph(4);
  std::uint64_t i = 0;
  for (auto _ : state) {
    lpf::Rng rng(lpf::derive_seed(4, i++));
    const auto b = lpf::sample_sphere(net.num_edges(), rng);
    benchmark::DoNotOptimize(lpf::solve_total_degree(net, b, rng));
  }
}
BENCHMARK(BM_TotalDegree)->Unit(benchmark::kMillisecond);

void BM_BuildStartSet(benchmark::State& state) {
  const lpf::Network net = lpf::complete_graph(4);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(lpf::build_start_set(net, seed++));
}
BENCHMARK(BM_BuildStartSet)->Unit(benchmark::kMillisecond);

}  // namespace
