#include <benchmark/benchmark.h>

#include <cmath>

#include "ccrank/poincare2d.hpp"

using namespace ccrank;

namespace {

void BM_SolveGradientCurl(benchmark::State& st) {
  Sampler u = [](double x1, double x2) {
    return Eigen::Vector2d(x2 * std::cos(x1 * x2), x1 * std::cos(x1 * x2)).eval();
  };
  SolveOptions o;
  o.N = static_cast<int>(st.range(0));
  Operator A = builtin("gradient", {}), B = builtin("curl", {});
  for (auto _ : st) benchmark::DoNotOptimize(solve(A, B, u, o).diag.reconstruction_error);
}
BENCHMARK(BM_SolveGradientCurl)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_Dft2(benchmark::State& st) {
  const int N = static_cast<int>(st.range(0));
  TorusField f(N, 2);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) f.at(0, a, b) = std::sin(a + 0.5 * b), f.at(1, a, b) = a * b;
  for (auto _ : st) benchmark::DoNotOptimize(idft2(dft2(f)).data.size());
}
BENCHMARK(BM_Dft2)->Arg(128)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
