#include <doctest.h>

#include "ccrank/crank.hpp"
#include "ccrank/opcore.hpp"
#include "helpers.hpp"

using namespace ccrank;
using th::gi;

namespace {

SymbolMatrix zoo(const std::string& name, int n = 2, int N = 1) {
  BuiltinParams p;
  p.n = n;
  p.N = N;
  return symbol(builtin(name, p));
}

}  // namespace

TEST_CASE("generic ranks") {
  CHECK(generic_rank(zoo("gradient"), 16) == 1);
  CHECK(generic_rank(zoo("symgrad"), 16) == 2);
  CHECK(generic_rank(zoo("laplacian"), 16) == 1);
  // exact rank at xi = (1, 2) by hand: symgrad rows (xi1, 0), (xi2/2, xi1/2), (0, xi2)
  CHECK(rank_at(zoo("symgrad"), Point{gi(1), gi(2)}) == 2);
}

TEST_CASE("constant rank verdicts") {
  RankReport div = is_constant_rank_C(zoo("div"));
  CHECK(div.constant_over_C == Verdict::Yes);
  CHECK(div.kernel_dim == 1);
  RankReport lap = is_constant_rank_C(zoo("laplacian"));
  CHECK(lap.constant_over_C == Verdict::No);
  REQUIRE(lap.witness);
  CHECK(rank_at(zoo("laplacian"), *lap.witness) == 0);
  for (int n : {2, 3})
    for (int N = 1; N <= 3; ++N) {
      if (n == 3 && N == 3) continue;
      RankReport r = is_constant_rank_C(zoo("curl", n, N));
      CHECK(r.constant_over_C == Verdict::Yes);
      CHECK(r.kernel_dim == std::size_t(N));
    }
}

TEST_CASE("C-ellipticity") {
  CHECK(is_C_elliptic(zoo("symgrad")));
  CHECK(is_C_elliptic(zoo("devsymgrad", 3)));
  RankReport r = is_constant_rank_C(zoo("devsymgrad", 2));
  CHECK_FALSE(r.c_elliptic);
  if (r.witness) CHECK(rank_at(zoo("devsymgrad", 2), *r.witness) < 2);
  CHECK_FALSE(is_C_elliptic(zoo("div")));
}

TEST_CASE("kernel dimension is d - r at random complex points") {
  Rng rng(kDefaultSeed);
  for (const char* name : {"div", "curl", "symgrad", "curlcurl", "gradient"}) {
    SymbolMatrix S = zoo(name);
    RankReport r = is_constant_rank_C(S);
    REQUIRE(r.constant_over_C == Verdict::Yes);
    for (int t = 0; t < 50; ++t) {
      Point p = th::random_point(rng, 2);
      if (p[0].is_zero() && p[1].is_zero()) continue;
      CHECK(S.cols() - rank_at(S, p) == r.kernel_dim);
    }
  }
}

TEST_CASE("generic rank stabilizes") {
  for (const auto& name : builtin_names()) {
    SymbolMatrix S = zoo(name);
    CHECK(generic_rank(S, 4) == generic_rank(S, 16));
  }
}

TEST_CASE("witnesses and reports are deterministic for a fixed seed") {
  RankReport a = is_constant_rank_C(zoo("laplacian")), b = is_constant_rank_C(zoo("laplacian"));
  REQUIRE(a.witness);
  CHECK(*a.witness == *b.witness);
  CHECK(a.sampled_real_constant == b.sampled_real_constant);
}
