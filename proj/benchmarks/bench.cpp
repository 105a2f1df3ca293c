#include <benchmark/benchmark.h>

#include "sahlq/correspondence.hpp"
#include "sahlq/fomodel.hpp"
#include "sahlq/substructural.hpp"

using namespace sahlq;

static void BM_Parse(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(parse_formula("~~x1 | ~(~x2 & x1) | ~(~x3 & x1 & x2) | ~(~x4 & x1 & x2 & x3)"));
}
BENCHMARK(BM_Parse);

static void BM_Correspondent(benchmark::State& s) {
  auto q = qe_btw(static_cast<int>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(correspondent(q));
}
BENCHMARK(BM_Correspondent)->DenseRange(1, 4);

static void BM_Oracle(benchmark::State& s) {
  auto q = qe_gd();
  auto c = correspondent(q);
  int n = static_cast<int>(s.range(0));
  for (auto _ : s) {
    int agree = 0;
    for (auto& p : posets_of_size(n)) agree += check_fo(p, c) == validates_quasiequation(up_algebra(p), q);
    benchmark::DoNotOptimize(agree);
  }
}
BENCHMARK(BM_Oracle)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

static void BM_EnumerateAlgebras(benchmark::State& s) {
  EnumerationConfig cfg;
  cfg.cls = ClassFilter::PSL;
  cfg.max_size = static_cast<int>(s.range(0));
  for (auto _ : s) benchmark::DoNotOptimize(enumerate_algebras(cfg));
}
BENCHMARK(BM_EnumerateAlgebras)->DenseRange(4, 6)->Unit(benchmark::kMillisecond);

static void BM_EnumerateFLe(benchmark::State& s) {
  int n = static_cast<int>(s.range(0));
  for (auto _ : s) benchmark::DoNotOptimize(enumerate_fle(n, n));
}
BENCHMARK(BM_EnumerateFLe)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
