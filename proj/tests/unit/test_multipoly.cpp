#include <doctest.h>

#include "helpers.hpp"

using namespace ccrank;
using th::c;
using th::gi;
using th::x;

TEST_CASE("evaluation at the light cone") {
  CPoly p = x(0) * x(0) + x(1) * x(1);
  CHECK(p.evaluate(std::vector<GaussRational>{gi(1), gi(0, 1)}).is_zero());
  CHECK((x(0) * x(1) + x(1) * x(1)).evaluate(std::vector<GaussRational>{gi(2), gi(3)}) == gi(15));
  CHECK(p.evaluate(std::vector<GaussRational>{gi(0), gi(0)}).is_zero());
  CHECK_THROWS_AS(p.evaluate(std::vector<GaussRational>{gi(1)}), Error);
}

TEST_CASE("homogeneity tags") {
  CHECK((x(0) * x(0) + x(1) * x(1)).homogeneity() == Homogeneity{Homogeneity::Homogeneous, 2});
  CHECK((x(0) + x(1) * x(1)).homogeneity().kind == Homogeneity::Inhomogeneous);
  CHECK(CPoly(2).homogeneity().kind == Homogeneity::Zero);
}

TEST_CASE("ring axioms and evaluation homomorphism on random triples") {
  Rng rng(kDefaultSeed);
  for (int t = 0; t < 200; ++t) {
    CPoly p = th::random_poly(rng, 3, 3, 4), q = th::random_poly(rng, 3, 3, 4), r = th::random_poly(rng, 3, 2, 3);
    CHECK(p * (q + r) == p * q + p * r);
    CHECK((p * q) * r == p * (q * r));
    CHECK(p * q == q * p);
    CHECK(p - p == CPoly(3));
    auto pt = th::random_point(rng, 3);
    CHECK((p * q + r).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt) + r.evaluate(pt));
  }
}

TEST_CASE("products of homogeneous polynomials are homogeneous") {
  Rng rng(7);
  for (int t = 0; t < 50; ++t) {
    CPoly p = th::random_poly(rng, 2, 3, 3).homogeneous_part(2), q = th::random_poly(rng, 2, 3, 3).homogeneous_part(3);
    auto h = (p * q).homogeneity();
    CHECK((h.kind == Homogeneity::Zero || (h.kind == Homogeneity::Homogeneous && h.degree == 5)));
  }
}

TEST_CASE("power and derivative") {
  CPoly p = x(0) + x(1);
  CHECK(p.pow(2) == x(0) * x(0) + c(2) * x(0) * x(1) + x(1) * x(1));
  CHECK(p.pow(0) == c(1));
  CHECK((x(0) * x(0) * x(1)).derivative(0) == c(2) * x(0) * x(1));
}

TEST_CASE("monomial divisibility and lcm") {
  Monomial a = Monomial::from({2, 1}), b = Monomial::from({1, 3});
  CHECK(Monomial::from({1, 1}).divides(a));
  CHECK_FALSE(b.divides(a));
  CHECK(lcm(a, b) == Monomial::from({2, 3}));
  CHECK(monomials_of_degree(2, 3).size() == 4);
}
