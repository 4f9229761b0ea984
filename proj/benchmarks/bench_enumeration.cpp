#include <benchmark/benchmark.h>

#include "solgas/correspondence.hpp"
#include "solgas/gas.hpp"
#include "solgas/hierarchy.hpp"
#include "solgas/matrix_model.hpp"
#include "solgas/sampling.hpp"

using namespace solgas;

namespace {

LatticeGas make_gas(std::size_t n) {
  Rng rng(17);
  const auto g = BoundaryGeometry::half_plane();
  return LatticeGas(random_lattice(g, n, rng, {2.0, 0.1, 0.05, 100000}), g, 2.0, 0.1,
                    [](Complex z) { return 0.1 * std::norm(z); });
}

void BM_GrandPartitionGray(benchmark::State& state) {
  const auto gas = make_gas(static_cast<std::size_t>(state.range(0)));
  EnumerationOptions o;
  o.deterministic = true;
  for (auto _ : state) benchmark::DoNotOptimize(grand_partition(gas, o));
  state.SetItemsProcessed(state.iterations() * (int64_t{1} << state.range(0)));
}
BENCHMARK(BM_GrandPartitionGray)->DenseRange(8, 20, 4);

void BM_GrandPartitionNaive(benchmark::State& state) {
  const auto gas = make_gas(static_cast<std::size_t>(state.range(0)));
  EnumerationOptions o;
  o.deterministic = true;
  o.order = EnumerationOrder::Naive;
  for (auto _ : state) benchmark::DoNotOptimize(grand_partition(gas, o));
  state.SetItemsProcessed(state.iterations() * (int64_t{1} << state.range(0)));
}
BENCHMARK(BM_GrandPartitionNaive)->DenseRange(8, 16, 4);

void BM_GrandPartitionThreads(benchmark::State& state) {
  const auto gas = make_gas(20);
  EnumerationOptions o;
  o.workers = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(grand_partition(gas, o));
}
BENCHMARK(BM_GrandPartitionThreads)->Arg(1)->Arg(2)->Arg(4)->UseRealTime();

void BM_CanonicalVsDeterminant(benchmark::State& state) {
  Rng rng(3);
  const auto sites = random_lattice(BoundaryGeometry::free_plane(), 16, rng, {2.0, 0.1, 0.05, 100000});
  const auto measure = Measure::from_lattice(sites, {});
  const std::size_t m = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(determinant_partition(measure, m));
}
BENCHMARK(BM_CanonicalVsDeterminant)->Arg(4)->Arg(8)->Arg(16);

void BM_TodaBilinear(benchmark::State& state) {
  Rng rng(5);
  CorrespondenceSpec spec;
  spec.kind = HierarchyKind::Toda2D;
  spec.lattice = random_lattice(BoundaryGeometry::disc_exterior(0.3), static_cast<std::size_t>(state.range(0)), rng);
  spec.times = random_times(HierarchyKind::Toda2D, 3, rng);
  const auto chain = PartitionChain::from_spec(spec);
  for (auto _ : state) benchmark::DoNotOptimize(toda_bilinear_residual(chain, 2));
}
BENCHMARK(BM_TodaBilinear)->Arg(6)->Arg(10)->Arg(14);

}  // namespace

BENCHMARK_MAIN();
