#include "ccrank/witness.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "ccrank/rng.hpp"

namespace ccrank {

std::vector<Point> candidate_points(int n) {
  std::vector<Point> out;
  for (int a = 0; a < n; ++a) {
    Point p(n, GaussRational(0));
    p[a] = GaussRational(1);
    out.push_back(p);
  }
  const GaussRational vals[5] = {GaussRational(0), GaussRational(1), GaussRational(-1), GaussRational::i(),
                                 -GaussRational::i()};
  std::vector<int> idx(n, 0);
  while (true) {
    int k = n - 1;
    while (k >= 0 && idx[k] == 4) idx[k--] = 0;
    if (k < 0) break;
    ++idx[k];
    int first = 0;
    while (first < n && idx[first] == 0) ++first;
    if (first == n || idx[first] != 1) continue;
    Point p(n);
    for (int a = 0; a < n; ++a) p[a] = vals[idx[a]];
    out.push_back(p);
  }
  return out;
}

std::vector<Point> random_points(int n, int count, std::uint64_t seed, int range, bool complex) {
  Rng rng(seed);
  std::vector<Point> out;
  while (static_cast<int>(out.size()) < count) {
    Point p(n);
    bool nonzero = false;
    for (int a = 0; a < n; ++a) {
      long re = rng.uniform_int(-range, range);
      long im = complex ? rng.uniform_int(-range, range) : 0;
      p[a] = GaussRational(Rational(re), Rational(im));
      nonzero = nonzero || re || im;
    }
    if (nonzero) out.push_back(std::move(p));
  }
  return out;
}

std::optional<Point> common_zero_candidate(const std::vector<CPoly>& gens) {
  int n = 0;
  for (const auto& g : gens) n = std::max(n, g.nvars());
  if (n == 0) return std::nullopt;
  std::vector<Point> pts = candidate_points(n);
  if (n == 2)
    for (auto& p : line_directions_n2(gens)) pts.push_back(p);
  for (const auto& p : pts) {
    bool all = true;
    for (const auto& g : gens)
      if (!g.is_zero() && !g.evaluate(p).is_zero()) {
        all = false;
        break;
      }
    if (all) return p;
  }
  return std::nullopt;
}

UPoly upoly_trim(UPoly p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
  return p;
}

GaussRational upoly_eval(const UPoly& p, const GaussRational& t) {
  GaussRational acc(0);
  for (std::size_t k = p.size(); k-- > 0;) acc = acc * t + p[k];
  return acc;
}

static UPoly upoly_rem(UPoly a, const UPoly& b) {
  a = upoly_trim(std::move(a));
  const GaussRational inv = b.back().inverse();
  while (a.size() >= b.size()) {
    GaussRational c = a.back() * inv;
    std::size_t shift = a.size() - b.size();
    for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= c * b[k];
    a.pop_back();
    a = upoly_trim(std::move(a));
  }
  return a;
}

UPoly upoly_gcd(UPoly a, UPoly b) {
  a = upoly_trim(std::move(a));
  b = upoly_trim(std::move(b));
  while (!b.empty()) {
    UPoly r = upoly_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    GaussRational inv = a.back().inverse();
    for (auto& c : a) c *= inv;
  }
  return a;
}

Rational rationalize(double x, long maxden) {
  if (!std::isfinite(x)) return Rational(0);
  double sgn = x < 0 ? -1.0 : 1.0;
  x = std::fabs(x);
  // continued fraction convergents p/q with q <= maxden
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double r = x;
  for (int it = 0; it < 64; ++it) {
    double a = std::floor(r);
    if (a > 1e15) break;
    long ai = static_cast<long>(a);
    long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > maxden) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double frac = r - a;
    if (frac < 1e-12) break;
    r = 1.0 / frac;
  }
  if (q1 == 0) return Rational(0);
  Rational q(p1, q1);
  q.canonicalize();
  return sgn < 0 ? Rational(-q) : q;
}

std::vector<GaussRational> gauss_roots(const UPoly& p_in, long maxden) {
  UPoly p = upoly_trim(p_in);
  std::vector<GaussRational> out;
  if (p.size() <= 1) return out;
  auto push = [&](const GaussRational& z) {
    for (const auto& o : out)
      if (o == z) return;
    if (upoly_eval(p, z).is_zero()) out.push_back(z);
  };
  // zero roots are exact; strip them so the companion matrix stays well conditioned
  std::size_t low = 0;
  while (low < p.size() && p[low].is_zero()) ++low;
  if (low > 0) push(GaussRational(0));
  UPoly q(p.begin() + low, p.end());
  if (q.size() <= 1) return out;
  const std::size_t m = q.size() - 1;
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(m, m);
  std::complex<double> lead = q.back().to_complex();
  for (std::size_t k = 0; k < m; ++k) {
    C(0, m - 1 - k) = -q[k].to_complex() / lead;
    if (k + 1 < m) C(k + 1, k) = 1.0;
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    auto z = es.eigenvalues()[k];
    push(GaussRational(rationalize(z.real(), maxden), rationalize(z.imag(), maxden)));
  }
  return out;
}

std::vector<Point> line_directions_n2(const std::vector<CPoly>& polys) {
  std::vector<Point> out;
  UPoly g;
  bool first = true;
  for (const auto& p : polys) {
    if (p.is_zero() || p.nvars() != 2) continue;
    UPoly u(p.total_degree() + 1, GaussRational(0));
    for (const auto& [m, c] : p.terms()) u[m.e[1]] += c;  // p(1, t)
    u = upoly_trim(std::move(u));
    if (u.empty()) continue;
    g = first ? u : upoly_gcd(g, u);
    first = false;
    if (g.size() == 1) break;
  }
  if (!first)
    for (const auto& t : gauss_roots(g)) out.push_back(Point{GaussRational(1), t});
  out.push_back(Point{GaussRational(0), GaussRational(1)});
  return out;
}

std::vector<Point> witness_search_points(int n, const std::vector<CPoly>& polys, int nrandom, std::uint64_t seed) {
  std::vector<Point> ordered = candidate_points(n);
  if (n == 2)
    for (auto& p : line_directions_n2(polys)) ordered.push_back(std::move(p));
  for (auto& p : random_points(n, nrandom, seed)) ordered.push_back(std::move(p));
  return ordered;
}

}  // namespace ccrank
