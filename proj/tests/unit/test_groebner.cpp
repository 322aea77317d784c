#include <doctest.h>

#include "ccrank/groebner.hpp"
#include "helpers.hpp"

using namespace ccrank;
using th::c;
using th::gi;
using th::x;

namespace {

CPoly combine(const std::vector<CPoly>& coeffs, const std::vector<CPoly>& gens) {
  CPoly s(gens[0].nvars());
  for (std::size_t j = 0; j < gens.size(); ++j) s += coeffs[j] * gens[j];
  return s;
}

}  // namespace

TEST_CASE("buchberger on simple ideals") {
  TrackedBasis tb = buchberger({x(0), x(1)});
  CHECK(tb.basis.size() == 2);
  CHECK(tb.cofactors_hold());
  TrackedBasis sq = buchberger({x(0) * x(0)});
  CHECK(sq.basis.size() == 1);
  CHECK(sq.basis[0] == x(0) * x(0));
}

TEST_CASE("membership in <x1^2+x2^2, x1 x2> matches hand division") {
  std::vector<CPoly> gens = {x(0) * x(0) + x(1) * x(1), x(0) * x(1)};
  TrackedBasis tb = buchberger(gens);
  CHECK(tb.cofactors_hold());
  MembershipWitness w = reduce(x(0).pow(3), tb);
  CHECK(w.remainder.is_zero());
  // oracle: x1^3 = x1 (x1^2 + x2^2) - x2 (x1 x2)
  CHECK(x(0).pow(3) == x(0) * gens[0] - x(1) * gens[1]);
  CHECK(combine(w.coefficients, gens) == x(0).pow(3));
  CHECK(reduce(x(1).pow(3), tb).remainder.is_zero());
  CHECK(reduce(x(0) * x(0) * x(1), tb).remainder.is_zero());
  CHECK_FALSE(reduce(x(0) * x(0), tb).remainder.is_zero());
}

TEST_CASE("membership is independent of the monomial order") {
  Rng rng(11);
  for (int t = 0; t < 15; ++t) {
    std::vector<CPoly> gens = {th::random_poly(rng, 2, 2, 2), th::random_poly(rng, 2, 2, 2)};
    if (gens[0].is_zero() || gens[1].is_zero()) continue;
    CPoly p = th::random_poly(rng, 2, 2, 2) * gens[0] + th::random_poly(rng, 2, 1, 2);
    TrackedBasis a = buchberger(gens, MonomialOrder::GRevLex), b = buchberger(gens, MonomialOrder::Lex);
    CHECK(reduce(p, a).remainder.is_zero() == reduce(p.with_order(MonomialOrder::Lex), b).remainder.is_zero());
  }
}

TEST_CASE("1 is not in a maximal ideal at the origin") {
  CHECK_FALSE(reduce(c(1), buchberger({x(0), x(1)})).remainder.is_zero());
}

TEST_CASE("power membership finds the smallest exponent") {
  std::vector<CPoly> gens = {x(0) * x(0) + x(1) * x(1), x(0) * x(1)};
  PowerMembership pm = power_membership(x(0), gens, 10);
  CHECK(pm.m == 3);
  CHECK(combine(pm.coefficients, gens) == x(0).pow(3));
  TrackedBasis tb = buchberger(gens);
  CHECK_FALSE(reduce(x(0).pow(2), tb).remainder.is_zero());
  CHECK(power_membership(gens[1], gens, 5).m == 1);
  CHECK_THROWS_AS(power_membership(x(0), {x(1)}, 5), CapError);
}

TEST_CASE("variety is the origin") {
  VarietyResult r = variety_is_origin({x(0), x(1)}, 5);
  CHECK(r.is_origin);
  CHECK(r.exponents == std::vector<int>{1, 1});
  CHECK(variety_is_origin({x(0) * x(0) + x(1) * x(1), x(0) * x(1)}, 10).is_origin);
  VarietyResult lap = variety_is_origin({x(0) * x(0) + x(1) * x(1)}, 8);
  CHECK_FALSE(lap.is_origin);
  REQUIRE(lap.hint.has_value());
  CHECK((x(0) * x(0) + x(1) * x(1)).evaluate(*lap.hint).is_zero());
}
