#include <doctest.h>

#include "helpers.hpp"

using namespace ccrank;
using th::gi;

TEST_CASE("rational parsing and printing") {
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("-4/2")) == "-2");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("abc"), Error);
}

TEST_CASE("Gaussian rational field operations") {
  GaussRational z(Rational(1), Rational(2)), w(Rational(3), Rational(-1));
  CHECK(z * w == GaussRational(Rational(5), Rational(5)));
  CHECK(z * z.inverse() == gi(1));
  CHECK(GaussRational::i() * GaussRational::i() == gi(-1));
  CHECK(z.norm2() == Rational(5));
  CHECK(parse_gauss(to_string(z)) == z);
  CHECK_THROWS_AS(gi(0).inverse(), Error);
}

TEST_CASE("rref and rank of a rational matrix") {
  QMatrix M = QMatrix::from_rows({{Rational(1), Rational(2), Rational(3)},
                                  {Rational(2), Rational(4), Rational(6)},
                                  {Rational(1), Rational(0), Rational(1)}});
  auto rr = rref(M);
  CHECK(rr.pivots == std::vector<std::size_t>{0, 1});
  CHECK(rank(M) == 2);
  // hand elimination: rows (1,0,1), (0,1,1)
  CHECK(rr.R(0, 2) == Rational(1));
  CHECK(rr.R(1, 2) == Rational(1));
  QMatrix K = kernel_matrix(M);
  CHECK(K.cols() == 1);
  CHECK((M * K).is_zero());
}

TEST_CASE("inverse and pseudo-inverse") {
  QMatrix M = QMatrix::from_rows({{Rational(2), Rational(1)}, {Rational(1), Rational(1)}});
  CHECK(M * inverse(M) == QMatrix::identity(2));
  QMatrix R = QMatrix::from_rows({{Rational(1), Rational(1)}});
  QMatrix P = pseudo_inverse(R);
  // (1,1)^+ = (1/2, 1/2)^T
  CHECK(P(0, 0) == Rational(1, 2));
  CHECK(P(1, 0) == Rational(1, 2));
  CHECK(R * P * R == R);
  CHECK(P * R * P == P);
}

TEST_CASE("right inverse on a subspace is a right inverse with range in the subspace") {
  QMatrix M = QMatrix::from_rows({{Rational(-1), Rational(1)}});
  QMatrix S = QMatrix::from_rows({{Rational(0)}, {Rational(1)}});
  QMatrix L = right_inverse_on_subspace(M, S);
  CHECK(M * L == QMatrix::identity(1));
  CHECK(L(0, 0) == Rational(0));
  QMatrix T = QMatrix::from_rows({{Rational(1)}, {Rational(1)}});
  CHECK_THROWS_AS(right_inverse_on_subspace(M, T), Error);
}

TEST_CASE("Gaussian kernel at the light-cone direction") {
  GMatrix A(1, 2);
  A(0, 0) = gi(1);
  A(0, 1) = gi(0, 1);
  auto K = kernel_basis(A);
  REQUIRE(K.size() == 1);
  CHECK(A(0, 0) * K[0][0] + A(0, 1) * K[0][1] == gi(0));
}

TEST_CASE("span comparison and orthogonal complement") {
  QMatrix A = QMatrix::from_rows({{Rational(1), Rational(2)}, {Rational(0), Rational(2)}});
  QMatrix B = QMatrix::identity(2);
  CHECK(same_span(A, B));
  QMatrix v = QMatrix::from_rows({{Rational(1)}, {Rational(1)}, {Rational(0)}});
  QMatrix C = orthogonal_complement(v, 3);
  CHECK(C.cols() == 2);
  CHECK((v.transpose() * C).is_zero());
}
