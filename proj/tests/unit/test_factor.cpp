#include <doctest.h>

#include "ccrank/factor.hpp"
#include "ccrank/opcore.hpp"
#include "helpers.hpp"

using namespace ccrank;
using th::gi;

namespace {

Operator zoo(const std::string& name) { return builtin(name, {}); }

bool identity_exact(const Operator& A1, const Operator& A2, const FactorizationResult& f) {
  return symbol(nabla_compose(A2, f.k_tilde)) == symbol(f.B_op) * symbol(A1);
}

}  // namespace

TEST_CASE("curl factors the gradient of curl") {
  Operator curl = zoo("curl"), nc = nabla_compose(curl, 1);
  FactorizationResult f = factor_through(curl, nc);
  CHECK(identity_exact(curl, nc, f));
  for (const auto& row : f.certificates)
    for (const auto& c : row) CHECK(c.m <= 1);
}

TEST_CASE("gradient factors the Laplacian in non-strict mode") {
  FactorOptions o;
  o.strict = false;
  Operator g = zoo("gradient"), l = zoo("laplacian");
  FactorizationResult f = factor_through(g, l, o);
  CHECK(identity_exact(g, l, f));
  for (const auto& row : f.certificates)
    for (const auto& c : row) CHECK(c.m == 0);
  CHECK_THROWS_AS(factor_through(g, l), Error);
}

TEST_CASE("curl does not factor div") {
  try {
    factor_through(zoo("curl"), zoo("div"));
    FAIL("expected InclusionError");
  } catch (const InclusionError& e) {
    CHECK(e.xi() == std::vector<std::string>{"1", "0"});
    CHECK(e.v() == std::vector<std::string>{"1", "0"});
  }
}

TEST_CASE("kernel equality verdicts") {
  CHECK(symbol_kernel_equal(zoo("laplacian"), zoo("bilaplacian")).verdict == KernelVerdict::Equal);
  Operator curl = zoo("curl");
  CHECK(symbol_kernel_equal(curl, nabla_compose(curl, 1)).verdict == KernelVerdict::Equal);
  KernelEqualityResult r = symbol_kernel_equal(curl, compose(zoo("laplacian"), curl));
  REQUIRE(r.verdict == KernelVerdict::NotEqual);
  CHECK(r.xi == Point{gi(1), gi(0, 1)});
  CHECK(r.v == std::vector<GaussRational>{gi(1), gi(0)});
}

TEST_CASE("kernel equality is symmetric") {
  Operator curl = zoo("curl"), lc = compose(zoo("laplacian"), curl), div = zoo("div");
  std::vector<std::pair<Operator, Operator>> pairs = {
      {zoo("laplacian"), zoo("bilaplacian")}, {curl, lc}, {curl, nabla_compose(curl, 1)}, {div, compose(zoo("laplacian"), div)}};
  for (const auto& [a, b] : pairs) CHECK(symbol_kernel_equal(a, b).verdict == symbol_kernel_equal(b, a).verdict);
}

TEST_CASE("Laplacian-composed operators lose kernel equality over C") {
  for (const char* name : {"div", "curl", "symgrad"}) {
    Operator B = zoo(name);
    BuiltinParams p;
    p.N = static_cast<int>(B.l);
    Operator L = compose(builtin("laplacian", p), B);
    KernelEqualityResult r = symbol_kernel_equal(B, L);
    CHECK(r.verdict == KernelVerdict::NotEqual);
    if (r.verdict == KernelVerdict::NotEqual) CHECK(kernel_difference_at(symbol(B), symbol(L), r.xi).has_value());
  }
}

TEST_CASE("Equal verdicts are point-sound") {
  Operator curl = zoo("curl"), nc = nabla_compose(curl, 1);
  Rng rng(13);
  for (int t = 0; t < 200; ++t) {
    Point p = th::random_point(rng, 2);
    if (p[0].is_zero() && p[1].is_zero()) continue;
    CHECK(same_span(kernel_matrix(symbol_at(curl, p)), kernel_matrix(symbol_at(nc, p))));
  }
}

TEST_CASE("plane-wave witness") {
  Operator curl = zoo("curl"), lc = compose(zoo("laplacian"), curl);
  WitnessFamily w = plane_wave_witness(curl, lc, symbol_kernel_equal(curl, lc));
  CHECK(w.annihilated_by == 1);
  CHECK((symbol_at(lc, w.xi) * GMatrix::column(w.v)).is_zero());
  CHECK_FALSE((symbol_at(curl, w.xi) * GMatrix::column(w.v)).is_zero());
  WitnessFamily s = plane_wave_witness(lc, curl, symbol_kernel_equal(lc, curl));
  CHECK(s.annihilated_by == 0);
  CHECK_THROWS_AS(plane_wave_witness(zoo("laplacian"), zoo("bilaplacian"),
                                     symbol_kernel_equal(zoo("laplacian"), zoo("bilaplacian"))),
                  Error);
}
