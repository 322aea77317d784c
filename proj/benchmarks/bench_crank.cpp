#include <benchmark/benchmark.h>

#include "ccrank/crank.hpp"
#include "ccrank/opcore.hpp"

using namespace ccrank;

namespace {

void BM_ConstantRank(benchmark::State& st, const char* name, int n) {
  BuiltinParams p;
  p.n = n;
  SymbolMatrix S = symbol(builtin(name, p));
  for (auto _ : st) benchmark::DoNotOptimize(is_constant_rank_C(S).constant_over_C);
}
BENCHMARK_CAPTURE(BM_ConstantRank, gradient, "gradient", 2);
BENCHMARK_CAPTURE(BM_ConstantRank, laplacian, "laplacian", 2);
BENCHMARK_CAPTURE(BM_ConstantRank, symgrad3, "symgrad", 3)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_ConstantRank, curlcurl3, "curlcurl", 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
