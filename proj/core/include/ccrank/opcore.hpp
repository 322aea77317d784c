#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ccrank/exactnum.hpp"
#include "ccrank/multipoly.hpp"
#include "ccrank/polymatrix.hpp"
#include "ccrank/rng.hpp"

namespace ccrank {

// sum_alpha A_alpha d^alpha, A_alpha : R^d -> R^l with rational entries
struct Operator {
  int n = 0;
  std::size_t d = 0;  // dim_domain
  std::size_t l = 0;  // dim_codomain
  std::map<Monomial, QMatrix> terms;
  std::vector<int> row_orders;
  std::string name;

  int order() const;
  bool fully_homogeneous() const;
};

// checks shapes and row homogeneity, fills row_orders (zero rows get the maximal order)
Operator make_operator(int n, std::size_t d, std::size_t l, std::map<Monomial, QMatrix> terms, std::string name = "");

SymbolMatrix symbol(const Operator& op);
QMatrix symbol_at(const Operator& op, const std::vector<Rational>& xi);
GMatrix symbol_at(const Operator& op, const std::vector<GaussRational>& xi);

Operator compose(const Operator& outer, const Operator& inner);
Operator nabla_compose(const Operator& op, int times);  // new row a*l + j is d_a of row j
Operator stack(const std::vector<Operator>& ops);
Operator left_multiply(const QMatrix& R, const Operator& op);
Operator right_multiply(const Operator& op, const QMatrix& P);
// rebuild an operator from a symbol with real rational coefficients
Operator operator_from_symbol(const SymbolMatrix& S, std::string name = "");

struct ImageSpanRoutes {
  QMatrix sampled;    // span of symbol images at random rational points
  QMatrix monomial;   // constant outputs of op on x^beta / beta! e_i, |beta| = k
};
ImageSpanRoutes image_span_routes(const Operator& op, std::uint64_t seed = kDefaultSeed);
// canonical basis (columns) of span{A[xi](R^d)}; throws SpanMismatch if the routes disagree
QMatrix image_span(const Operator& op, std::uint64_t seed = kDefaultSeed);

Operator homogenize(const std::vector<Operator>& components);
Operator homogenize(const Operator& op);  // split by row order first

struct JetIndex {
  std::size_t component;
  Monomial beta;
};
std::vector<JetIndex> jet_layout(int n, std::size_t d, int order);
// rows (i, beta): xi^beta e_i^T, the symbol of u -> grad^order u in jet storage
SymbolMatrix jet_symbol(int n, std::size_t d, int order);

struct OrderReduction {
  Operator first_order;
  Operator compatibility;
  std::vector<JetIndex> jet;
  bool unchanged = false;  // input was already of order <= 1
};
OrderReduction reduce_order(const Operator& op);

struct BuiltinParams {
  int n = 2;
  int N = 1;     // number of vector components where meaningful
  int k = 1;     // kgradient order
  bool full = false;  // curlcurl: all n^4 index rows instead of the reduced set
};
std::vector<std::string> builtin_names();
Operator builtin(const std::string& name, const BuiltinParams& p = {});
std::size_t sym_index(int n, int i, int j);

using PolyVec = std::vector<CPoly>;
struct PolySpace {
  std::vector<PolyVec> basis;
  int degree_bound = 0;
  bool independent() const;
};
PolyVec apply(const Operator& op, const PolyVec& u);

}  // namespace ccrank
