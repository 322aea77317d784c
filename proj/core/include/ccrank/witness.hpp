#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ccrank/multipoly.hpp"

namespace ccrank {

using Point = std::vector<GaussRational>;

// unit vectors first, then {0,1,-1,i,-i}^n with first nonzero entry 1 in lexicographic order
std::vector<Point> candidate_points(int n);

// Gaussian-integer points, coordinates in [-range, range]; a prefix of a longer
// run with the same seed is the shorter run
std::vector<Point> random_points(int n, int count, std::uint64_t seed, int range = 100, bool complex = true);

std::optional<Point> common_zero_candidate(const std::vector<CPoly>& gens);

// univariate polynomials over Q(i), coefficients from low to high degree
using UPoly = std::vector<GaussRational>;
UPoly upoly_trim(UPoly p);
UPoly upoly_gcd(UPoly a, UPoly b);
GaussRational upoly_eval(const UPoly& p, const GaussRational& t);
// roots lying in Q(i), found numerically and confirmed exactly
std::vector<GaussRational> gauss_roots(const UPoly& p, long maxden = 1000);

Rational rationalize(double x, long maxden);

// n = 2: directions (1, t) for the Q(i)-roots t of gcd_k p_k(1, t), then (0, 1)
std::vector<Point> line_directions_n2(const std::vector<CPoly>& polys);

// deterministic search order: units, fixed candidates, line roots (n = 2), random points
std::vector<Point> witness_search_points(int n, const std::vector<CPoly>& polys, int nrandom, std::uint64_t seed);

}  // namespace ccrank
