#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ccrank/groebner.hpp"
#include "ccrank/polymatrix.hpp"
#include "ccrank/rng.hpp"
#include "ccrank/witness.hpp"

namespace ccrank {

enum class Verdict { Yes, No, Undetermined };
const char* verdict_name(Verdict v);

struct RankOptions {
  int samples = 16;
  int cap = -1;  // -1: default_cap of the minors
  std::uint64_t seed = kDefaultSeed;
  int real_samples = 200;
  int witness_random = 2000;
  std::uint64_t lazy_threshold = 20000;
};

struct RankReport {
  std::size_t generic_rank = 0;
  std::size_t kernel_dim = 0;
  Verdict constant_over_C = Verdict::Undetermined;
  std::optional<Point> witness;  // xi with rank(S[xi]) < r
  std::size_t witness_rank = 0;
  std::vector<int> exponents;    // N(a) when Yes
  bool c_elliptic = false;
  bool sampled_real_constant = false;
  int real_samples = 0;
  int cap = 0;
  std::size_t minors_used = 0;
  bool lazy_minors = false;
  std::string reason;
};

std::size_t generic_rank(const SymbolMatrix& S, int samples, std::uint64_t seed = kDefaultSeed);
std::size_t rank_at(const SymbolMatrix& S, const Point& xi);

RankReport is_constant_rank_C(const SymbolMatrix& S, const RankOptions& opt = {});
bool is_C_elliptic(const SymbolMatrix& S, const RankOptions& opt = {});

// a point where the rank drops below r, from the fixed search order
std::optional<Point> rank_drop_witness(const SymbolMatrix& S, std::size_t r, const std::vector<CPoly>& minors,
                                       int nrandom, std::uint64_t seed);

}  // namespace ccrank
