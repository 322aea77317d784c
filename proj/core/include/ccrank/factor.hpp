#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ccrank/crank.hpp"
#include "ccrank/nullsatz.hpp"
#include "ccrank/opcore.hpp"

namespace ccrank {

struct FactorOptions {
  int cap = -1;
  bool strict = true;
  std::uint64_t seed = kDefaultSeed;
};

struct FactorizationResult {
  int k_tilde = 0;
  Operator B_op;
  std::vector<std::vector<int>> N;                 // N[m][a]
  std::vector<std::vector<Certificate>> certificates;  // [m][a]
  RankReport rank_a1;
  std::optional<RankReport> rank_a2;
};

// nabla^k o A2 = B o A1
FactorizationResult factor_through(const Operator& A1, const Operator& A2, const FactorOptions& opt = {});

enum class KernelVerdict { Equal, NotEqual, Undetermined };
const char* kernel_verdict_name(KernelVerdict v);

struct KernelEqualityResult {
  KernelVerdict verdict = KernelVerdict::Undetermined;
  std::string method;  // certificates | scalar-radical | witness-search
  Point xi;
  std::vector<GaussRational> v;
  int annihilated_by = -1;  // 0: first operator kills v, 1: second
  std::string reason;
};

KernelEqualityResult symbol_kernel_equal(const Operator& B, const Operator& Bt, int cap = -1,
                                         std::uint64_t seed = kDefaultSeed);

// v with exactly one of S0[xi] v, S1[xi] v zero; side = index of the operator that annihilates v
struct KernelWitness {
  Point xi;
  std::vector<GaussRational> v;
  int side;
};
std::optional<KernelWitness> kernel_difference_at(const SymbolMatrix& S0, const SymbolMatrix& S1, const Point& xi);

struct WitnessFamily {
  Point xi;
  std::vector<GaussRational> v;
  int annihilated_by = -1;
  std::string description;
};

WitnessFamily plane_wave_witness(const Operator& B, const Operator& Bt, const KernelEqualityResult& res);

}  // namespace ccrank
