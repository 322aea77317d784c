#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ccrank/crank.hpp"
#include "ccrank/minors.hpp"
#include "ccrank/polymatrix.hpp"

namespace ccrank {

// P stored d x l: column j holds p_1j..p_dj, the j-th equation sum_i p_ij v_i = 0
struct MinorSystem {
  PolyMatrix P;
  std::size_t r = 0;
  std::vector<IndexSet> Is, Js;
  std::vector<CPoly> minors;  // index iI * Js.size() + iJ

  const CPoly& at(std::size_t iI, std::size_t iJ) const { return minors[iI * Js.size() + iJ]; }
};

MinorSystem minor_system(const PolyMatrix& P, std::size_t r);

// det of M_IJ with column gamma replaced by (b_i(beta))_beta
CPoly modified_minor(const PolyMatrix& P, const std::vector<CPoly>& b, const IndexSet& I, const IndexSet& J,
                     std::size_t gamma);

// sum_gamma p_{i j(gamma)} det(M_IJ^gamma) == b_i det(M_IJ)
bool claim_holds(const PolyMatrix& P, const std::vector<CPoly>& b, const IndexSet& I, const IndexSet& J, std::size_t i);

// the (r+1)x(r+1) matrix [[M_IJ, b_I], [p_{i,J}, b_i]]
PolyMatrix augmented_matrix(const PolyMatrix& P, const std::vector<CPoly>& b, const IndexSet& I, const IndexSet& J,
                            std::size_t i);

// symbol (l x d) to the d x l orientation
PolyMatrix system_from_symbol(const SymbolMatrix& S);

enum class Route { Nullstellensatz, Auto, Direct };
const char* route_name(Route r);

struct MinorTerm {
  IndexSet I, J;
  CPoly g;
  CPoly det;
  std::vector<CPoly> det_gamma;
};

struct Certificate {
  CPoly q;
  int m = 0;
  std::vector<CPoly> h;
  Route route = Route::Nullstellensatz;
  std::size_t r = 0;
  std::vector<MinorTerm> provenance;  // nonzero g_IJ only; empty for direct solves
  std::size_t claims_checked = 0;
};

struct CertifyOptions {
  int cap = -1;
  Route route = Route::Nullstellensatz;
  std::uint64_t seed = kDefaultSeed;
  int inclusion_points = 50;
  bool check_constant_rank = true;
  std::size_t full_claim_limit = 2000;
};

struct InclusionWitness {
  Point xi;
  std::vector<GaussRational> v;
};

// a point where sum_i p_ij(xi) v_i = 0 for all j but sum_i b_i(xi) v_i != 0
std::optional<InclusionWitness> inclusion_witness(const PolyMatrix& P, const std::vector<CPoly>& b, int npoints,
                                                  std::uint64_t seed);

Certificate certify_row(const PolyMatrix& P, const std::vector<CPoly>& b, const CPoly& q,
                        const CertifyOptions& opt = {});

struct VerifyResult {
  bool ok = true;
  int failing_i = -1;
  CPoly difference;
  std::string message;
};

VerifyResult verify_certificate(const PolyMatrix& P, const std::vector<CPoly>& b, const Certificate& c);

}  // namespace ccrank
