#include <benchmark/benchmark.h>

#include "qmod/cache.hpp"
#include "qmod/catalog.hpp"
#include "qmod/operators.hpp"
#include "qmod/spans.hpp"
#include "qmod/verify.hpp"

namespace {

using namespace qmod;

void BM_EulerProduct(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(euler_product(1, state.range(0)));
}
BENCHMARK(BM_EulerProduct)->Arg(10'000)->Arg(100'000);

void BM_ExpandCatalogForm(benchmark::State& state, const char* name) {
  for (auto _ : state) benchmark::DoNotOptimize(catalog_form(name, state.range(0)));
}
BENCHMARK_CAPTURE(BM_ExpandCatalogForm, G27, "G27")->Arg(10'000)->Arg(100'000);
BENCHMARK_CAPTURE(BM_ExpandCatalogForm, G36, "G36")->Arg(10'000)->Arg(100'000);
BENCHMARK_CAPTURE(BM_ExpandCatalogForm, G144, "G144")->Arg(10'000);

void BM_DenseMultiply(benchmark::State& state) {
  QSeries f = catalog_form("L1", state.range(0));
  QSeries g = catalog_form("L2", state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mul(f, g));
}
BENCHMARK(BM_DenseMultiply)->Arg(500)->Arg(2000);

void BM_Invert(benchmark::State& state) {
  QSeries f = catalog_form("G32", state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(invert(f));
}
BENCHMARK(BM_Invert)->Arg(500)->Arg(2000);

void BM_Hecke(benchmark::State& state) {
  QSeries G = catalog_form("G27", 125 * 200);
  for (auto _ : state) benchmark::DoNotOptimize(hecke(G, 2, 5, 3));
}
BENCHMARK(BM_Hecke);

void BM_BuildH(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_H(27, state.range(0), 100));
}
BENCHMARK(BM_BuildH)->Arg(5)->Arg(25);

void BM_LimitCheck(benchmark::State& state) {
  for (auto _ : state) {
    ExpansionCache cache;
    benchmark::DoNotOptimize(check_limit(curve(36), 17, 1, 20, cache));
  }
}
BENCHMARK(BM_LimitCheck)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
