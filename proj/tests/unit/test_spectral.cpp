#include <doctest.h>

#include <cmath>

#include "ccrank/error.hpp"
#include "ccrank/rng.hpp"
#include "ccrank/spectral.hpp"

using namespace ccrank;

namespace {

TorusField sample(int N, int d, const std::function<double(int, double, double)>& f) {
  TorusField t(N, d);
  for (int c = 0; c < d; ++c)
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) t.at(c, a, b) = f(c, double(a) / N, double(b) / N);
  return t;
}

int idx(int k, int N) { return k < 0 ? k + N : k; }

// int_0^1 (y - y^2) exp(-2 pi i k y) dy
cplx bump_coeff(int k) { return k == 0 ? cplx(1.0 / 6) : cplx(-1.0 / (2 * M_PI * M_PI * k * k)); }

EdgeTrace bump_trace(const QuadRule& r) {
  EdgeTrace t{Edge::Q1, r, Eigen::MatrixXd(1, r.size())};
  for (std::size_t q = 0; q < r.size(); ++q) t.values(0, q) = r.nodes[q] - r.nodes[q] * r.nodes[q];
  return t;
}

}  // namespace

TEST_CASE("constant field has a single coefficient") {
  TorusField f = dft2(sample(16, 1, [](int, double, double) { return 3.0; }));
  CHECK(std::abs(f.at(0, 0, 0) - cplx(3)) < 1e-14);
  double rest = 0;
  for (std::size_t i = 1; i < f.data.size(); ++i) rest = std::max(rest, std::abs(f.data[i]));
  CHECK(rest < 1e-14);
}

TEST_CASE("cosine has coefficients one half at k = (+-1, 0)") {
  const int N = 32;
  TorusField f = dft2(sample(N, 2, [](int c, double x1, double) { return c == 0 ? std::cos(2 * M_PI * x1) : 0.0; }));
  CHECK(std::abs(f.at(0, 1, 0) - 0.5) < 1e-14);
  CHECK(std::abs(f.at(0, idx(-1, N), 0) - 0.5) < 1e-14);
  CHECK(std::abs(f.at(0, 2, 0)) < 1e-14);
  CHECK(std::abs(f.at(1, 1, 0)) < 1e-14);
}

TEST_CASE("round trip, Parseval and Hermitian symmetry on random fields") {
  Rng rng(kDefaultSeed);
  const int N = 64;
  TorusField f = sample(N, 2, [&](int, double, double) { return rng.uniform() - 0.5; });
  TorusField F = dft2(f), g = idft2(F);
  double err = 0, e2 = 0, c2 = 0;
  for (std::size_t i = 0; i < f.data.size(); ++i) {
    err = std::max(err, std::abs(f.data[i] - g.data[i]));
    e2 += std::norm(f.data[i]);
    c2 += std::norm(F.data[i]);
  }
  CHECK(err <= 1e-12);
  CHECK(std::abs(e2 / (double(N) * N) - c2) <= 1e-10 * c2);
  double herm = 0;
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) herm = std::max(herm, std::abs(F.at(0, a, b) - std::conj(F.at(0, (N - a) % N, (N - b) % N))));
  CHECK(herm < 1e-14);
}

TEST_CASE("non power of two sizes are rejected") {
  TorusField f(6, 1);
  CHECK_THROWS_AS(dft2(f), Error);
}

TEST_CASE("Gauss-Legendre rule") {
  std::vector<double> x, w;
  gauss_legendre(16, x, w);
  double s = 0, m = 0;
  for (int i = 0; i < 16; ++i) s += w[i], m += w[i] * std::pow(x[i], 30);
  CHECK(std::abs(s - 2) < 1e-14);
  CHECK(std::abs(m - 2.0 / 31) < 1e-14);
}

TEST_CASE("cumulative integration") {
  QuadRule g = gauss_panel_rule(4, 8);
  std::vector<double> f;
  for (double s : g.nodes) f.push_back(s * s);
  auto F = cumulative(g, f);
  for (std::size_t q = 0; q < g.size(); ++q) CHECK(std::abs(F[q] - std::pow(g.nodes[q], 3) / 3) < 1e-14);
  QuadRule t = trapezoid_rule(8);
  std::vector<double> lin(t.size());
  for (std::size_t q = 0; q < t.size(); ++q) lin[q] = 2 * t.nodes[q];
  auto L = cumulative(t, lin);
  CHECK(std::abs(L.back() - 1) < 1e-15);
}

TEST_CASE("edge measure coefficients") {
  QuadRule r = trapezoid_rule(64);
  EdgeTrace zero{Edge::Q1, r, Eigen::MatrixXd::Zero(1, r.size())};
  CHECK(edge_measure_coeffs(zero, 4)[0].cwiseAbs().maxCoeff() == 0);
  EdgeTrace one{Edge::Q1, r, Eigen::MatrixXd::Constant(1, r.size(), 2.0)};
  auto mu = edge_measure_coeffs(one, 4)[0];
  for (int k1 = -4; k1 <= 4; ++k1) {
    CHECK(std::abs(mu(k1 + 4, 4) - 2.0) < 1e-12);
    CHECK(std::abs(mu(k1 + 4, 5)) < 1e-12);
  }
  EdgeTrace q2 = one;
  q2.edge = Edge::Q2;
  CHECK(std::abs(edge_measure_coeffs(q2, 4)[0](4, 0) - 2.0) < 1e-12);
  CHECK_THROWS_AS(edge_measure_coeffs(one, 20), Error);
}

TEST_CASE("bump trace matches its closed form") {
  auto mu = edge_measure_coeffs(bump_trace(gauss_panel_rule(64, 16)), 8)[0];
  for (int k = -8; k <= 8; ++k) CHECK(std::abs(mu(0, k + 8) - bump_coeff(k)) < 1e-8);
  auto err = [](int M) {
    auto m = edge_measure_coeffs(bump_trace(trapezoid_rule(M)), 4)[0];
    double e = 0;
    for (int k = -4; k <= 4; ++k) e = std::max(e, std::abs(m(0, k + 4) - bump_coeff(k)));
    return e;
  };
  CHECK(err(1024) < 1e-6);
  CHECK(err(128) >= 4 * err(256));
}

TEST_CASE("edge coefficients are linear and conjugate symmetric") {
  QuadRule r = trapezoid_rule(128);
  EdgeTrace a = bump_trace(r), b = a;
  for (std::size_t q = 0; q < r.size(); ++q) b.values(0, q) = std::sin(3 * r.nodes[q]);
  EdgeTrace s = a;
  s.values = 2 * a.values + b.values;
  auto ma = edge_measure_coeffs(a, 8)[0], mb = edge_measure_coeffs(b, 8)[0], ms = edge_measure_coeffs(s, 8)[0];
  CHECK((ms - 2 * ma - mb).cwiseAbs().maxCoeff() < 1e-13);
  for (int k = 1; k <= 8; ++k) CHECK(std::abs(mb(0, 8 + k) - std::conj(mb(0, 8 - k))) < 1e-14);
}
