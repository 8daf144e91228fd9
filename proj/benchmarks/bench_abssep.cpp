#include <benchmark/benchmark.h>

#include "abssep/chull.hpp"
#include "abssep/criteria.hpp"
#include "abssep/error.hpp"
#include "abssep/falsify.hpp"
#include "abssep/polytope.hpp"
#include "abssep/random.hpp"

using namespace abssep;

namespace {

void BM_HullMembership(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const auto sets = two_simplex_sets(dim);
  Rng rng(derive_seed(3, static_cast<std::uint64_t>(dim)));
  std::vector<Spectrum> inputs;
  for (int i = 0; i < 64; ++i) inputs.push_back(Spectrum::from_values(sample_dirichlet(rng, dim, 1.0)));
  std::size_t i = 0;
  for (auto _ : state) {
    try {
      benchmark::DoNotOptimize(hull_membership(inputs[i++ % inputs.size()], sets));
    } catch (const Error&) {
    }
  }
}
BENCHMARK(BM_HullMembership)->Arg(4)->Arg(9)->Arg(16);

void BM_ChFacet(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  Rng rng(5);
  const auto s = Spectrum::from_values(sample_dirichlet(rng, dim, 1.0));
  const auto dims = SystemDims::bipartite(2, dim / 2);
  for (auto _ : state) benchmark::DoNotOptimize(ch_facet(s, dims));
}
BENCHMARK(BM_ChFacet)->Arg(4)->Arg(16)->Arg(64);

void BM_BruteForceFacets(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  auto vertices = simplex_vertices(dim, Rational(2));
  const auto lower = simplex_vertices(dim, Rational(-1));
  vertices.insert(vertices.end(), lower.begin(), lower.end());
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_facets(vertices));
}
BENCHMARK(BM_BruteForceFacets)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_SectorFacet(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ordered_sector_facet(dim, Rational(-1), Rational(2)));
}
BENCHMARK(BM_SectorFacet)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_FalsifyThroughput(benchmark::State& state) {
  const auto dims = SystemDims::bipartite(2, 2);
  const std::vector<double> werner{1.0 / 6, 1.0 / 6, 1.0 / 6, 0.5};
  const auto s = Spectrum::from_values(werner);
  FalsifyOptions opts;
  opts.samples = 1000;
  opts.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(falsify_ap(s, dims, opts));
  state.SetItemsProcessed(state.iterations() * opts.samples);
}
BENCHMARK(BM_FalsifyThroughput)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
