#include <benchmark/benchmark.h>

#include "convexa/convexity.hpp"
#include "convexa/decide.hpp"
#include "convexa/embed.hpp"
#include "convexa/identities.hpp"
#include "convexa/jdep.hpp"

using namespace convexa;

namespace {

// Co(n-chain) has 1 + n(n+1)/2 elements, Co(n-antichain) has 2^n.
Poset shape(int which, std::size_t n) { return which ? antichain_poset(n) : chain_poset(n); }

void BM_CoLattice(benchmark::State& state) {
  Poset p = shape(state.range(0), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(co_lattice(p).lattice.size());
}
BENCHMARK(BM_CoLattice)->ArgsProduct({{0, 1}, {4, 6, 8}})->Unit(benchmark::kMicrosecond);

void BM_SubFast(benchmark::State& state) {
  FiniteLattice l = co_lattice(chain_poset(state.range(0))).lattice;
  for (auto _ : state) benchmark::DoNotOptimize(satisfies_SUB_fast(l).holds);
  state.counters["size"] = l.size();
}
BENCHMARK(BM_SubFast)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_SubBrute(benchmark::State& state) {
  FiniteLattice l = co_lattice(chain_poset(state.range(0))).lattice;
  CheckOptions opts;
  opts.budget = UINT64_MAX;
  for (auto _ : state) benchmark::DoNotOptimize(satisfies_SUB_bruteforce(l, opts).holds);
  state.counters["size"] = l.size();
}
BENCHMARK(BM_SubBrute)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_BuildR(benchmark::State& state) {
  FiniteLattice l = co_lattice(chain_poset(state.range(0))).lattice;
  JoinDependency jd(l);
  std::size_t points = 0;
  for (auto _ : state) {
    RPoset r = build_R(jd);
    points = r.points.size();
    benchmark::DoNotOptimize(phi(l, r).verified);
  }
  state.counters["|R|"] = points;
}
BENCHMARK(BM_BuildR)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_CrownFreeSweep(benchmark::State& state) {
  auto posets = enumerate_posets(state.range(0)).posets;
  for (auto _ : state) {
    std::size_t free = 0;
    for (const auto& p : posets) free += is_crown_free(p);
    benchmark::DoNotOptimize(free);
  }
  state.counters["posets"] = posets.size();
}
BENCHMARK(BM_CrownFreeSweep)->DenseRange(5, 7)->Unit(benchmark::kMillisecond);

void BM_Catalog(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_posets(state.range(0)).posets.size());
}
BENCHMARK(BM_Catalog)->DenseRange(4, 6)->Unit(benchmark::kMillisecond);

void BM_ThetaSampler(benchmark::State& state) {
  FiniteLattice l = co_lattice(antichain_poset(state.range(0))).lattice;
  const std::uint64_t n = 10000;
  for (auto _ : state) benchmark::DoNotOptimize(sample_theta(l, n, 7).samples);
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_ThetaSampler)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_Decide(benchmark::State& state) {
  Identity id = builtin_identity(state.range(0) ? "DIST" : "S");
  for (auto _ : state) benchmark::DoNotOptimize(decide_identity_in_SUB(id.lhs, id.rhs).valid);
}
BENCHMARK(BM_Decide)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
