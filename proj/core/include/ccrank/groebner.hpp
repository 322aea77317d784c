#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ccrank/multipoly.hpp"

namespace ccrank {

struct GroebnerLimits {
  std::size_t max_basis = 4000;
  std::size_t max_pairs = 400000;
};

struct TrackedBasis {
  int nvars = 0;
  MonomialOrder order = MonomialOrder::GRevLex;
  std::vector<CPoly> generators;
  std::vector<CPoly> basis;                     // monic, minimal
  std::vector<std::vector<CPoly>> cofactors;    // basis[i] = sum_j cofactors[i][j] * generators[j]

  bool cofactors_hold() const;
  bool contains_unit() const;
  // a pure power of every variable among the leading monomials
  bool zero_dimensional() const;
  bool has_pure_power(int a) const;
};

struct MembershipWitness {
  CPoly target;
  std::vector<CPoly> coefficients;  // against the original generators
  CPoly remainder;

  bool holds(const std::vector<CPoly>& generators) const;
};

struct PowerMembership {
  int m = 0;
  std::vector<CPoly> coefficients;
};

struct VarietyResult {
  bool is_origin = false;
  std::vector<int> exponents;  // N(a) on success
  int failing_variable = -1;
  std::optional<std::vector<GaussRational>> hint;  // a nonzero common zero, if one was found
  std::string reason;
};

TrackedBasis buchberger(const std::vector<CPoly>& gens, MonomialOrder ord = MonomialOrder::GRevLex,
                        const GroebnerLimits& lim = {});

MembershipWitness reduce(const CPoly& p, const TrackedBasis& tb);

int default_cap(const std::vector<CPoly>& gens);

PowerMembership power_membership(const CPoly& q, const TrackedBasis& tb, int cap);
PowerMembership power_membership(const CPoly& q, const std::vector<CPoly>& gens, int cap,
                                 MonomialOrder ord = MonomialOrder::GRevLex);

VarietyResult variety_is_origin(const std::vector<CPoly>& gens, int cap, const GroebnerLimits& lim = {});
VarietyResult variety_is_origin(const TrackedBasis& tb, int cap);

}  // namespace ccrank
