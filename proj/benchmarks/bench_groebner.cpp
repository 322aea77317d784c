#include <benchmark/benchmark.h>

#include "ccrank/groebner.hpp"
#include "ccrank/opcore.hpp"

using namespace ccrank;

namespace {

std::vector<CPoly> cyclic(int n) {
  std::vector<CPoly> gens;
  for (int k = 1; k < n; ++k) {
    CPoly s(n);
    for (int i = 0; i < n; ++i) {
      CPoly t = CPoly::constant(n, GaussRational(1));
      for (int j = 0; j < k; ++j) t = t * CPoly::variable(n, (i + j) % n);
      s = s + t;
    }
    gens.push_back(s);
  }
  CPoly p = CPoly::constant(n, GaussRational(1));
  for (int i = 0; i < n; ++i) p = p * CPoly::variable(n, i);
  gens.push_back(p - CPoly::constant(n, GaussRational(1)));
  return gens;
}

void BM_BuchbergerCyclic(benchmark::State& st) {
  auto gens = cyclic(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(buchberger(gens).basis.size());
}
BENCHMARK(BM_BuchbergerCyclic)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_VarietyOfCurlMinors(benchmark::State& st) {
  SymbolMatrix S = symbol(builtin("curl", {}));
  std::vector<CPoly> gens = {S(0, 0), S(0, 1)};
  for (auto _ : st) benchmark::DoNotOptimize(variety_is_origin(gens, default_cap(gens)));
}
BENCHMARK(BM_VarietyOfCurlMinors);

}  // namespace

BENCHMARK_MAIN();
