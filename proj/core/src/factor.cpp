#include "ccrank/factor.hpp"

#include <algorithm>

#include "ccrank/groebner.hpp"
#include "ccrank/minors.hpp"

namespace ccrank {

const char* kernel_verdict_name(KernelVerdict v) {
  switch (v) {
    case KernelVerdict::Equal: return "Equal";
    case KernelVerdict::NotEqual: return "NotEqual";
    case KernelVerdict::Undetermined: return "Undetermined";
  }
  return "?";
}

namespace {

std::string point_str(const Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + to_string(p[i]);
  return s + ")";
}

RankReport require_constant_rank(const Operator& op, const std::string& label, std::uint64_t seed) {
  RankOptions ro;
  ro.seed = seed;
  RankReport rep = is_constant_rank_C(symbol(op), ro);
  if (rep.constant_over_C == Verdict::No)
    fail(Errc::ConstantRankViolated, label + (op.name.empty() ? "" : " (" + op.name + ")") +
                                         " is not of constant rank over C: rank drops at xi = " + point_str(*rep.witness));
  if (rep.constant_over_C == Verdict::Undetermined)
    throw CapError(label + ": constant rank over C undetermined (" + rep.reason + ")", -1, rep.cap);
  return rep;
}

}  // namespace

FactorizationResult factor_through(const Operator& A1, const Operator& A2, const FactorOptions& opt) {
  require(A1.n == A2.n && A1.d == A2.d, Errc::DimensionMismatch, "A1 and A2 differ in n or domain dimension");
  const int n = A1.n;
  FactorizationResult res;
  res.rank_a1 = require_constant_rank(A1, "A1", opt.seed);
  if (opt.strict) res.rank_a2 = require_constant_rank(A2, "A2", opt.seed);

  const SymbolMatrix S1 = symbol(A1), S2 = symbol(A2);
  const PolyMatrix P = system_from_symbol(S1);
  CertifyOptions co;
  co.cap = opt.cap;
  co.route = Route::Auto;
  co.seed = opt.seed;
  co.check_constant_rank = false;

  int maxN = 0;
  res.N.assign(A2.l, std::vector<int>(n, 0));
  res.certificates.assign(A2.l, {});
  for (std::size_t m = 0; m < A2.l; ++m) {
    std::vector<CPoly> b = S2.row(m);
    for (int a = 0; a < n; ++a) {
      Certificate c = certify_row(P, b, CPoly::variable(n, a), co);
      res.N[m][a] = c.m;
      maxN = std::max(maxN, c.m);
      res.certificates[m].push_back(std::move(c));
    }
  }
  res.k_tilde = n * maxN;

  // rows of nabla^k o A2: (alpha, m) in nabla_compose order
  std::vector<std::pair<Monomial, std::size_t>> rows;
  for (std::size_t m = 0; m < A2.l; ++m) rows.push_back({Monomial(n), m});
  for (int s = 0; s < res.k_tilde; ++s) {
    std::vector<std::pair<Monomial, std::size_t>> next;
    for (int a = 0; a < n; ++a)
      for (const auto& [al, m] : rows) next.push_back({al * Monomial::var(n, a), m});
    rows = std::move(next);
  }

  SymbolMatrix SB(rows.size(), A1.l, n);
  for (std::size_t R = 0; R < rows.size(); ++R) {
    const auto& [alpha, m] = rows[R];
    int a = 0;
    while (a < n && alpha.e[a] < res.N[m][a]) ++a;
    require(a < n, Errc::InternalError, "no variable with alpha_a >= N(a, m)");
    Monomial shift = alpha / Monomial::var(n, a, res.N[m][a]);
    const Certificate& c = res.certificates[m][a];
    for (std::size_t j = 0; j < A1.l; ++j) {
      int deg = res.k_tilde + A2.row_orders[m] - A1.row_orders[j];
      if (deg < 0 || c.h[j].is_zero()) continue;
      SB(R, j) = c.h[j].mul_term(shift, GaussRational(1)).homogeneous_part(deg);
    }
  }
  res.B_op = operator_from_symbol(SB, "factor");
  Operator lhs = nabla_compose(A2, res.k_tilde);
  if (symbol(lhs) != symbol(res.B_op) * S1)
    fail(Errc::InternalError, "factorization identity nabla^k A2 = B A1 does not hold");
  return res;
}

std::optional<KernelWitness> kernel_difference_at(const SymbolMatrix& S0, const SymbolMatrix& S1, const Point& xi) {
  GMatrix M0 = S0.evaluate(xi), M1 = S1.evaluate(xi);
  auto probe = [&](const GMatrix& K, const GMatrix& other, int side) -> std::optional<KernelWitness> {
    for (std::size_t c = 0; c < K.cols(); ++c) {
      auto v = K.col(c);
      auto w = other.apply(v);
      if (std::any_of(w.begin(), w.end(), [](const GaussRational& x) { return !x.is_zero(); }))
        return KernelWitness{xi, v, side};
    }
    return std::nullopt;
  };
  if (auto w = probe(kernel_matrix(M0), M1, 0)) return w;
  return probe(kernel_matrix(M1), M0, 1);
}

namespace {

std::vector<CPoly> search_polys(const SymbolMatrix& S, std::size_t r) {
  std::vector<CPoly> out;
  for (const auto& e : S.entries())
    if (!e.is_zero()) out.push_back(e);
  if (r > 1 && binomial(S.rows(), r) * binomial(S.cols(), r) <= 2000)
    for (auto& m : distinct_minors(all_minors(S, r))) out.push_back(std::move(m));
  return out;
}

std::optional<KernelWitness> search_witness(const SymbolMatrix& S0, const SymbolMatrix& S1, std::uint64_t seed) {
  std::vector<CPoly> polys = search_polys(S0, generic_rank(S0, 8, seed));
  for (auto& p : search_polys(S1, generic_rank(S1, 8, seed))) polys.push_back(std::move(p));
  for (const auto& xi : witness_search_points(S0.nvars(), polys, 500, seed)) {
    if (std::all_of(xi.begin(), xi.end(), [](const GaussRational& x) { return x.is_zero(); })) continue;
    if (auto w = kernel_difference_at(S0, S1, xi)) return w;
  }
  return std::nullopt;
}

KernelEqualityResult with_witness(KernelEqualityResult res, const KernelWitness& w) {
  res.verdict = KernelVerdict::NotEqual;
  res.xi = w.xi;
  res.v = w.v;
  res.annihilated_by = w.side;
  return res;
}

// ker S_from subset of ker S_to, via certificates for every row of S_to
void certify_inclusion(const SymbolMatrix& from, const SymbolMatrix& to, int cap, std::uint64_t seed) {
  CertifyOptions co;
  co.cap = cap;
  co.route = Route::Auto;
  co.seed = seed;
  co.check_constant_rank = false;
  PolyMatrix P = system_from_symbol(from);
  for (std::size_t m = 0; m < to.rows(); ++m)
    for (int a = 0; a < from.nvars(); ++a) certify_row(P, to.row(m), CPoly::variable(from.nvars(), a), co);
}

}  // namespace

KernelEqualityResult symbol_kernel_equal(const Operator& B, const Operator& Bt, int cap, std::uint64_t seed) {
  require(B.n == Bt.n && B.d == Bt.d, Errc::DimensionMismatch, "operators differ in n or domain dimension");
  const SymbolMatrix S0 = symbol(B), S1 = symbol(Bt);
  KernelEqualityResult res;
  RankOptions ro;
  ro.seed = seed;
  RankReport r0 = is_constant_rank_C(S0, ro), r1 = is_constant_rank_C(S1, ro);

  if (r0.constant_over_C == Verdict::Yes && r1.constant_over_C == Verdict::Yes) {
    res.method = "certificates";
    try {
      certify_inclusion(S0, S1, cap, seed);
      certify_inclusion(S1, S0, cap, seed);
      res.verdict = KernelVerdict::Equal;
      res.reason = "row certificates in both directions for q = xi_a, every a";
      return res;
    } catch (const InclusionError& e) {
      res.reason = e.what();
    } catch (const CapError& e) {
      res.reason = e.what();
    }
  } else if (B.d == 1) {
    res.method = "scalar-radical";
    std::vector<CPoly> e0, e1;
    for (const auto& e : S0.entries())
      if (!e.is_zero()) e0.push_back(e);
    for (const auto& e : S1.entries())
      if (!e.is_zero()) e1.push_back(e);
    auto radical_in = [&](const std::vector<CPoly>& xs, const std::vector<CPoly>& gens) {
      if (xs.empty()) return;
      if (gens.empty()) throw CapError("generator ideal is zero", -1, 0);
      TrackedBasis tb = buchberger(gens);
      int c = cap >= 0 ? cap : default_cap(gens);
      for (const auto& x : xs) power_membership(x, tb, c);
    };
    try {
      radical_in(e1, e0);
      radical_in(e0, e1);
      res.verdict = KernelVerdict::Equal;
      res.reason = "each entry lies in the radical of the other operator's entries";
      return res;
    } catch (const CapError& e) {
      res.reason = e.what();
    }
  } else {
    res.method = "witness-search";
  }

  if (auto w = search_witness(S0, S1, seed)) {
    res = with_witness(res, *w);
    res.reason = "kernels differ at xi = " + point_str(w->xi);
    return res;
  }
  res.verdict = KernelVerdict::Undetermined;
  if (res.reason.empty()) res.reason = "no certificate path applies and no witness was found";
  return res;
}

WitnessFamily plane_wave_witness(const Operator& B, const Operator& Bt, const KernelEqualityResult& res) {
  if (res.verdict != KernelVerdict::NotEqual)
    fail(Errc::NoWitness, std::string("no plane-wave family: verdict is ") + kernel_verdict_name(res.verdict));
  const SymbolMatrix S0 = symbol(B), S1 = symbol(Bt);
  const SymbolMatrix& kill = res.annihilated_by == 0 ? S0 : S1;
  const SymbolMatrix& keep = res.annihilated_by == 0 ? S1 : S0;
  auto zero = [](const std::vector<GaussRational>& w) {
    return std::all_of(w.begin(), w.end(), [](const GaussRational& x) { return x.is_zero(); });
  };
  if (!zero(kill.evaluate(res.xi).apply(res.v)) || zero(keep.evaluate(res.xi).apply(res.v)))
    fail(Errc::InternalError, "plane-wave witness fails its defining inequality");
  WitnessFamily f;
  f.xi = res.xi;
  f.v = res.v;
  f.annihilated_by = res.annihilated_by;
  std::string phase;
  for (std::size_t a = 0; a < f.xi.size(); ++a) {
    if (f.xi[a].is_zero()) continue;
    std::string c = to_string(f.xi[a]);
    std::string x = "x" + std::to_string(a + 1);
    std::string term = c == "1" ? x : c == "-1" ? "-" + x : "(" + c + ")" + x;
    phase += (phase.empty() || term[0] == '-') ? term : " + " + term;
  }
  std::string v = "(";
  for (std::size_t i = 0; i < f.v.size(); ++i) v += (i ? ", " : "") + to_string(f.v[i]);
  f.description = "u_h(x) = exp(i h (" + phase + ")) " + v + ")";
  return f;
}

}  // namespace ccrank
