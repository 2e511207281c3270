// Serial reference kernels against their OpenMP versions.

#include <benchmark/benchmark.h>

#include "pgl/kernels.hpp"

using namespace pgl;

namespace {

FiniteGroupSpec spec_for(std::int64_t log_order) {
  // Z(8)^a + Z(2)^b with 3a + b = log_order
  std::vector<std::uint32_t> exps(static_cast<std::size_t>(log_order / 3), 3);
  exps.insert(exps.end(), static_cast<std::size_t>(log_order % 3), 1);
  return FiniteGroupSpec::make(2, exps);
}

std::vector<std::vector<std::uint32_t>> perms_of(const FiniteGroup& g) {
  std::vector<std::vector<std::uint32_t>> out;
  for (const auto& a : elementary_automorphisms(g.spec())) out.push_back(as_permutation(a, g));
  return out;
}

template <auto Kernel>
void element_table(benchmark::State& state) {
  const FiniteGroup g(spec_for(state.range(0)), std::uint64_t{1} << 24);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(g));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.order()));
}

template <auto Kernel>
void socle_counts(benchmark::State& state) {
  const FiniteGroup g(spec_for(state.range(0)), std::uint64_t{1} << 24);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(g));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.order()));
}

template <auto Kernel>
void tuple_orbits(benchmark::State& state) {
  const FiniteGroup g(spec_for(state.range(0)), std::uint64_t{1} << 24);
  const auto perms = perms_of(g);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(g, perms, 2));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.order() * g.order()));
}

}  // namespace

BENCHMARK(element_table<kernels::serial::element_table>)->Arg(10)->Arg(14)->Arg(16);
BENCHMARK(element_table<kernels::parallel::element_table>)->Arg(10)->Arg(14)->Arg(16);
BENCHMARK(socle_counts<kernels::serial::socle_power_counts>)->Arg(10)->Arg(14)->Arg(16);
BENCHMARK(socle_counts<kernels::parallel::socle_power_counts>)->Arg(10)->Arg(14)->Arg(16);
BENCHMARK(tuple_orbits<kernels::serial::tuple_orbits>)->Arg(6)->Arg(8)->Arg(10);
BENCHMARK(tuple_orbits<kernels::parallel::tuple_orbits>)->Arg(6)->Arg(8)->Arg(10);

BENCHMARK_MAIN();
