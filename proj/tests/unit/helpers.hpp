#pragma once

#include "ccrank/exactnum.hpp"
#include "ccrank/multipoly.hpp"
#include "ccrank/rng.hpp"

namespace th {

using namespace ccrank;

inline GaussRational gi(long re, long im = 0) { return GaussRational(Rational(re), Rational(im)); }
inline CPoly x(int a, int n = 2) { return CPoly::variable(n, a); }
inline CPoly c(long v, int n = 2) { return CPoly::constant(n, gi(v)); }

inline CPoly random_poly(Rng& rng, int n, int maxdeg, int terms) {
  CPoly p(n);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> e(n);
    int left = static_cast<int>(rng.uniform_int(0, maxdeg));
    for (int a = 0; a < n; ++a) {
      e[a] = static_cast<int>(rng.uniform_int(0, left));
      left -= e[a];
    }
    p += CPoly::monomial(Monomial::from(e), gi(rng.uniform_int(-9, 9), rng.uniform_int(-3, 3)));
  }
  return p;
}

inline std::vector<GaussRational> random_point(Rng& rng, int n) {
  std::vector<GaussRational> p;
  for (int a = 0; a < n; ++a) p.push_back(gi(rng.uniform_int(-20, 20), rng.uniform_int(-20, 20)));
  return p;
}

}  // namespace th
