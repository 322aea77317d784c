#include "ccrank/groebner.hpp"

#include <set>
#include <tuple>

#include "ccrank/witness.hpp"

namespace ccrank {

namespace {

struct Elem {
  CPoly f;
  std::vector<CPoly> cof;
};

void make_monic(Elem& e) {
  GaussRational inv = e.f.lead_coeff().inverse();
  if (inv == GaussRational(1)) return;
  e.f = inv * e.f;
  for (auto& c : e.cof) c = inv * c;
}

// h -= c x^m g on both the polynomial and its cofactor vector
void sub_scaled(Elem& h, const Monomial& m, const GaussRational& c, const Elem& g) {
  h.f = h.f.sub_mul_term(m, c, g.f);
  for (std::size_t j = 0; j < h.cof.size(); ++j)
    if (!g.cof[j].is_zero()) h.cof[j] = h.cof[j].sub_mul_term(m, c, g.cof[j]);
}

void top_reduce(Elem& h, const std::vector<Elem>& G) {
  while (!h.f.is_zero()) {
    const Monomial& lm = h.f.lead_mono();
    const Elem* div = nullptr;
    for (const auto& g : G)
      if (g.f.lead_mono().divides(lm)) {
        div = &g;
        break;
      }
    if (!div) return;
    GaussRational c = h.f.lead_coeff();  // divisors are monic
    sub_scaled(h, lm / div->f.lead_mono(), c, *div);
  }
}

struct Pair {
  std::size_t i, j;
  Monomial lcm;
  int deg;
};

}  // namespace

bool TrackedBasis::cofactors_hold() const {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    CPoly s(nvars, order);
    for (std::size_t j = 0; j < generators.size(); ++j)
      if (!cofactors[i][j].is_zero()) s += cofactors[i][j] * generators[j];
    if (s != basis[i]) return false;
  }
  return true;
}

bool TrackedBasis::contains_unit() const {
  for (const auto& b : basis)
    if (b.is_constant() && !b.is_zero()) return true;
  return false;
}

bool TrackedBasis::has_pure_power(int a) const {
  for (const auto& b : basis) {
    const Monomial& m = b.lead_mono();
    bool pure = true;
    for (int k = 0; k < nvars; ++k)
      if (k != a && m.e[k]) pure = false;
    if (pure) return true;
  }
  return false;
}

bool TrackedBasis::zero_dimensional() const {
  for (int a = 0; a < nvars; ++a)
    if (!has_pure_power(a)) return false;
  return true;
}

bool MembershipWitness::holds(const std::vector<CPoly>& generators) const {
  CPoly s = remainder;
  for (std::size_t j = 0; j < generators.size(); ++j)
    if (!coefficients[j].is_zero()) s += coefficients[j] * generators[j].with_order(s.order());
  return s == target;
}

TrackedBasis buchberger(const std::vector<CPoly>& gens_in, MonomialOrder ord, const GroebnerLimits& lim) {
  require(!gens_in.empty(), Errc::DimensionMismatch, "empty generator list");
  TrackedBasis tb;
  tb.nvars = gens_in[0].nvars();
  tb.order = ord;
  for (const auto& g : gens_in) {
    require(g.nvars() == tb.nvars || g.is_zero(), Errc::DimensionMismatch, "generators have different variable counts");
    tb.generators.push_back(g.with_order(ord));
  }
  const std::size_t ng = tb.generators.size();
  const int n = tb.nvars;

  std::vector<Elem> G;
  auto pair_less = [](const Pair& a, const Pair& b) {
    if (a.deg != b.deg) return a.deg < b.deg;
    return std::tie(a.j, a.i) < std::tie(b.j, b.i);
  };
  std::set<Pair, decltype(pair_less)> queue(pair_less);
  std::set<std::pair<std::size_t, std::size_t>> pending;

  auto add = [&](Elem e) {
    make_monic(e);
    std::size_t k = G.size();
    G.push_back(std::move(e));
    if (G.size() > lim.max_basis) fail(Errc::ResourceCap, "Groebner basis exceeded " + std::to_string(lim.max_basis) + " elements");
    for (std::size_t i = 0; i < k; ++i) {
      Monomial l = lcm(G[i].f.lead_mono(), G[k].f.lead_mono());
      queue.insert(Pair{i, k, l, l.degree()});
      pending.insert({i, k});
    }
  };

  for (std::size_t j = 0; j < ng; ++j) {
    if (tb.generators[j].is_zero()) continue;
    Elem e{tb.generators[j], std::vector<CPoly>(ng, CPoly(n, ord))};
    e.cof[j] = CPoly::constant(n, GaussRational(1), ord);
    top_reduce(e, G);
    if (!e.f.is_zero()) add(std::move(e));
  }

  std::size_t processed = 0;
  while (!queue.empty()) {
    Pair p = *queue.begin();
    queue.erase(queue.begin());
    pending.erase({p.i, p.j});
    if (++processed > lim.max_pairs) fail(Errc::ResourceCap, "S-pair budget of " + std::to_string(lim.max_pairs) + " exhausted");

    const Monomial& li = G[p.i].f.lead_mono();
    const Monomial& lj = G[p.j].f.lead_mono();
    if (coprime(li, lj)) continue;
    bool chain = false;
    for (std::size_t k = 0; k < G.size() && !chain; ++k) {
      if (k == p.i || k == p.j) continue;
      if (!G[k].f.lead_mono().divides(p.lcm)) continue;
      auto key = [](std::size_t a, std::size_t b) { return a < b ? std::make_pair(a, b) : std::make_pair(b, a); };
      if (!pending.count(key(p.i, k)) && !pending.count(key(p.j, k))) chain = true;
    }
    if (chain) continue;

    Elem s{CPoly(n, ord), std::vector<CPoly>(ng, CPoly(n, ord))};
    sub_scaled(s, p.lcm / li, GaussRational(-1), G[p.i]);
    sub_scaled(s, p.lcm / lj, GaussRational(1), G[p.j]);
    top_reduce(s, G);
    if (!s.f.is_zero()) add(std::move(s));
  }

  // minimal basis: drop elements whose leading monomial is a multiple of another's
  std::vector<bool> keep(G.size(), true);
  for (std::size_t i = 0; i < G.size(); ++i)
    for (std::size_t k = 0; k < G.size() && keep[i]; ++k) {
      if (k == i || !keep[k]) continue;
      const Monomial& mk = G[k].f.lead_mono();
      const Monomial& mi = G[i].f.lead_mono();
      if (mk.divides(mi) && (mk != mi || k < i)) keep[i] = false;
    }
  for (std::size_t i = 0; i < G.size(); ++i)
    if (keep[i]) {
      tb.basis.push_back(std::move(G[i].f));
      tb.cofactors.push_back(std::move(G[i].cof));
    }
  if (!tb.cofactors_hold()) fail(Errc::InternalError, "cofactor identity broken after Buchberger");
  return tb;
}

MembershipWitness reduce(const CPoly& p_in, const TrackedBasis& tb) {
  require(p_in.nvars() == tb.nvars || p_in.is_zero(), Errc::DimensionMismatch, "polynomial and basis variable counts differ");
  const int n = tb.nvars;
  MembershipWitness w;
  w.target = p_in.with_order(tb.order);
  CPoly p = w.target;
  std::vector<CPoly> quot(tb.basis.size(), CPoly(n, tb.order));
  std::vector<CPoly::Term> rem;
  while (!p.is_zero()) {
    const Monomial lm = p.lead_mono();
    std::size_t k = 0;
    while (k < tb.basis.size() && !tb.basis[k].lead_mono().divides(lm)) ++k;
    if (k == tb.basis.size()) {
      rem.push_back(p.terms().front());
      p = p.sub_mul_term(Monomial(n), p.lead_coeff(), CPoly::monomial(lm, GaussRational(1), tb.order));
      continue;
    }
    GaussRational c = p.lead_coeff();
    Monomial m = lm / tb.basis[k].lead_mono();
    p = p.sub_mul_term(m, c, tb.basis[k]);
    quot[k] = quot[k] + CPoly::monomial(m, c, tb.order);
  }
  w.remainder = CPoly::from_terms(n, std::move(rem), tb.order);
  w.coefficients.assign(tb.generators.size(), CPoly(n, tb.order));
  for (std::size_t k = 0; k < quot.size(); ++k) {
    if (quot[k].is_zero()) continue;
    for (std::size_t j = 0; j < tb.generators.size(); ++j)
      if (!tb.cofactors[k][j].is_zero()) w.coefficients[j] += quot[k] * tb.cofactors[k][j];
  }
  if (!w.holds(tb.generators)) fail(Errc::InternalError, "membership witness does not expand to the target");
  return w;
}

int default_cap(const std::vector<CPoly>& gens) {
  int maxdeg = 1, n = 1;
  for (const auto& g : gens) {
    maxdeg = std::max(maxdeg, g.total_degree());
    n = std::max(n, g.nvars());
  }
  return 4 * maxdeg * n;
}

PowerMembership power_membership(const CPoly& q_in, const TrackedBasis& tb, int cap) {
  require(!q_in.is_zero(), Errc::InternalError, "power membership of the zero polynomial");
  require(cap >= 0, Errc::InternalError, "negative cap");
  const CPoly q = q_in.with_order(tb.order);
  CPoly qm = CPoly::constant(tb.nvars, GaussRational(1), tb.order);
  for (int m = 0; m <= cap; ++m) {
    MembershipWitness w = reduce(qm, tb);
    if (w.remainder.is_zero()) return {m, std::move(w.coefficients)};
    // the normal form of a pure variable power that no leading monomial divides is itself
    if (m >= 1 && q.size() == 1 && w.remainder == qm) {
      int var = -1;
      for (int a = 0; a < tb.nvars; ++a)
        if (q.lead_mono().e[a]) var = (var == -1) ? a : -2;
      if (var >= 0 && !tb.has_pure_power(var))
        throw CapError("x" + std::to_string(var + 1) + "^m is irreducible for every m: not in the radical", var, cap);
    }
    qm = qm * q;
  }
  throw CapError("no power q^m with m <= " + std::to_string(cap) + " lies in the ideal (last candidate m = " +
                     std::to_string(cap) + ")",
                 -1, cap);
}

PowerMembership power_membership(const CPoly& q, const std::vector<CPoly>& gens, int cap, MonomialOrder ord) {
  return power_membership(q, buchberger(gens, ord), cap);
}

VarietyResult variety_is_origin(const TrackedBasis& tb, int cap) {
  VarietyResult res;
  const int n = tb.nvars;
  for (int a = 0; a < n; ++a) {
    try {
      res.exponents.push_back(power_membership(CPoly::variable(n, a, tb.order), tb, cap).m);
    } catch (const CapError& e) {
      res.is_origin = false;
      res.failing_variable = a;
      res.reason = e.what();
      res.exponents.clear();
      res.hint = common_zero_candidate(tb.generators);
      return res;
    }
  }
  res.is_origin = true;
  return res;
}

VarietyResult variety_is_origin(const std::vector<CPoly>& gens, int cap, const GroebnerLimits& lim) {
  std::vector<CPoly> nz;
  int n = 0;
  for (const auto& g : gens) {
    require(g.is_homogeneous(), Errc::NotHomogeneous, "generator " + g.str() + " is not homogeneous");
    if (!g.is_zero()) nz.push_back(g);
    n = std::max(n, g.nvars());
  }
  if (nz.empty()) {
    VarietyResult res;
    res.failing_variable = 0;
    res.reason = "all generators vanish identically";
    if (n > 0) res.hint = std::vector<GaussRational>(n, GaussRational(1));
    return res;
  }
  return variety_is_origin(buchberger(nz, MonomialOrder::GRevLex, lim), cap);
}

}  // namespace ccrank
