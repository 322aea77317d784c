#include "ccrank/nullsatz.hpp"

#include <map>

#include "ccrank/groebner.hpp"
#include "ccrank/witness.hpp"

namespace ccrank {

const char* route_name(Route r) {
  switch (r) {
    case Route::Nullstellensatz: return "nullstellensatz";
    case Route::Auto: return "auto";
    case Route::Direct: return "direct";
  }
  return "?";
}

PolyMatrix system_from_symbol(const SymbolMatrix& S) { return S.transpose(); }

MinorSystem minor_system(const PolyMatrix& P, std::size_t r) {
  MinorSystem ms;
  ms.P = P;
  ms.r = r;
  ms.Is = subsets(P.rows(), r);
  ms.Js = subsets(P.cols(), r);
  ms.minors.reserve(ms.Is.size() * ms.Js.size());
  for (const auto& I : ms.Is)
    for (const auto& J : ms.Js) ms.minors.push_back(minor(P, I, J));
  return ms;
}

CPoly modified_minor(const PolyMatrix& P, const std::vector<CPoly>& b, const IndexSet& I, const IndexSet& J,
                     std::size_t gamma) {
  PolyMatrix M = submatrix(P, I, J);
  for (std::size_t beta = 0; beta < I.size(); ++beta) M(beta, gamma) = b[I[beta]];
  return det(M);
}

PolyMatrix augmented_matrix(const PolyMatrix& P, const std::vector<CPoly>& b, const IndexSet& I, const IndexSet& J,
                            std::size_t i) {
  const std::size_t r = I.size();
  PolyMatrix M(r + 1, r + 1, P.nvars());
  for (std::size_t beta = 0; beta <= r; ++beta) {
    std::size_t row = beta < r ? I[beta] : i;
    for (std::size_t g = 0; g < r; ++g) M(beta, g) = P(row, J[g]);
    M(beta, r) = b[row];
  }
  return M;
}

static bool claim_with(const PolyMatrix& P, const std::vector<CPoly>& b, const IndexSet& J, std::size_t i,
                       const CPoly& d, const std::vector<CPoly>& dg) {
  CPoly lhs(P.nvars());
  for (std::size_t g = 0; g < J.size(); ++g)
    if (!dg[g].is_zero() && !P(i, J[g]).is_zero()) lhs += P(i, J[g]) * dg[g];
  return lhs == b[i] * d;
}

bool claim_holds(const PolyMatrix& P, const std::vector<CPoly>& b, const IndexSet& I, const IndexSet& J,
                 std::size_t i) {
  std::vector<CPoly> dg;
  for (std::size_t g = 0; g < J.size(); ++g) dg.push_back(modified_minor(P, b, I, J, g));
  return claim_with(P, b, J, i, minor(P, I, J), dg);
}

std::optional<InclusionWitness> inclusion_witness(const PolyMatrix& P, const std::vector<CPoly>& b, int npoints,
                                                  std::uint64_t seed) {
  const int n = P.nvars();
  std::vector<Point> pts = candidate_points(n);
  for (auto& p : random_points(n, npoints, seed)) pts.push_back(std::move(p));
  for (const auto& xi : pts) {
    GMatrix K = kernel_matrix(P.evaluate(xi).transpose());
    std::vector<GaussRational> bx(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) bx[i] = b[i].evaluate(xi);
    for (std::size_t c = 0; c < K.cols(); ++c) {
      GaussRational s(0);
      for (std::size_t i = 0; i < b.size(); ++i) s += bx[i] * K(i, c);
      if (!s.is_zero()) return InclusionWitness{xi, K.col(c)};
    }
  }
  return std::nullopt;
}

namespace {

int common_degree(const std::vector<CPoly>& v) {
  int deg = -1;
  for (const auto& p : v) {
    if (p.is_zero()) continue;
    auto h = p.homogeneity();
    if (h.kind != Homogeneity::Homogeneous) return -2;
    if (deg != -1 && deg != h.degree) return -2;
    deg = h.degree;
  }
  return deg;
}

// homogeneous ansatz: solve sum_j h_j p_ij = T_i exactly
std::optional<std::vector<CPoly>> direct_solve(const PolyMatrix& P, const std::vector<CPoly>& T) {
  const int n = P.nvars();
  const std::size_t d = P.rows(), l = P.cols();
  std::vector<CPoly> h(l, CPoly(n));
  int D = common_degree(T);
  if (D == -2) return std::nullopt;
  if (D == -1) return h;
  struct Unknown {
    std::size_t j;
    Monomial mu;
  };
  std::vector<Unknown> unk;
  for (std::size_t j = 0; j < l; ++j) {
    int k = common_degree(P.col(j));
    if (k == -2) return std::nullopt;
    if (k == -1 || k > D) continue;
    for (const auto& mu : monomials_of_degree(n, D - k)) unk.push_back({j, mu});
  }
  std::map<Monomial, std::size_t> eqmono;
  for (const auto& mu : monomials_of_degree(n, D)) eqmono.emplace(mu, eqmono.size());
  const std::size_t E = d * eqmono.size();
  GMatrix A(E, unk.size() + 1);
  for (std::size_t u = 0; u < unk.size(); ++u)
    for (std::size_t i = 0; i < d; ++i)
      for (const auto& [m, c] : P(i, unk[u].j).terms()) A(i * eqmono.size() + eqmono.at(m * unk[u].mu), u) += c;
  for (std::size_t i = 0; i < d; ++i)
    for (const auto& [m, c] : T[i].terms()) A(i * eqmono.size() + eqmono.at(m), unk.size()) = c;
  auto rr = rref(A);
  if (!rr.pivots.empty() && rr.pivots.back() == unk.size()) return std::nullopt;
  for (std::size_t r = 0; r < rr.pivots.size(); ++r) {
    const Unknown& u = unk[rr.pivots[r]];
    h[u.j] += CPoly::monomial(u.mu, rr.R(r, unk.size()));
  }
  return h;
}

}  // namespace

Certificate certify_row(const PolyMatrix& P, const std::vector<CPoly>& b, const CPoly& q, const CertifyOptions& opt) {
  const int n = P.nvars();
  require(b.size() == P.rows(), Errc::DimensionMismatch,
          "b has " + std::to_string(b.size()) + " entries, the system has d = " + std::to_string(P.rows()));
  require(!q.is_zero() && q.homogeneity().kind == Homogeneity::Homogeneous && q.total_degree() >= 1,
          Errc::NotHomogeneous, "q must be homogeneous of degree >= 1");

  std::size_t r;
  if (opt.check_constant_rank) {
    RankOptions ro;
    ro.seed = opt.seed;
    RankReport rep = is_constant_rank_C(P.transpose(), ro);
    if (rep.constant_over_C == Verdict::No)
      fail(Errc::ConstantRankViolated, "the system loses rank at xi = (" +
                                           [&] {
                                             std::string s;
                                             for (const auto& x : *rep.witness) s += (s.empty() ? "" : ", ") + to_string(x);
                                             return s;
                                           }() +
                                           ")");
    if (rep.constant_over_C == Verdict::Undetermined)
      throw CapError("constant rank over C undetermined: " + rep.reason, -1, rep.cap);
    r = rep.generic_rank;
  } else {
    r = generic_rank(P.transpose(), 16, opt.seed);
  }

  if (auto w = inclusion_witness(P, b, opt.inclusion_points, opt.seed))
    throw InclusionError("kernel inclusion fails: the system vanishes on v but B[xi](v) != 0", to_strings(w->xi),
                         to_strings(w->v));

  Certificate cert;
  cert.q = q;
  cert.r = r;
  cert.route = opt.route;

  if (opt.route == Route::Direct || opt.route == Route::Auto) {
    int cap = opt.cap >= 0 ? opt.cap : default_cap({q});
    int mmax = opt.route == Route::Auto ? 0 : cap;
    CPoly qm = CPoly::constant(n, GaussRational(1));
    for (int m = 0; m <= mmax; ++m, qm = qm * q) {
      std::vector<CPoly> T;
      for (const auto& bi : b) T.push_back(qm * bi);
      if (auto h = direct_solve(P, T)) {
        cert.m = m;
        cert.h = std::move(*h);
        cert.route = Route::Direct;
        VerifyResult vr = verify_certificate(P, b, cert);
        if (!vr.ok) fail(Errc::InternalError, "direct certificate failed verification: " + vr.message);
        return cert;
      }
    }
    if (opt.route == Route::Direct)
      throw CapError("no homogeneous solution with q^m, m <= " + std::to_string(cap), -1, cap);
    cert.route = Route::Nullstellensatz;
  }

  MinorSystem ms = minor_system(P, r);
  int cap = opt.cap >= 0 ? opt.cap : default_cap(ms.minors);
  PowerMembership pm = power_membership(q, ms.minors, cap);
  cert.m = pm.m;
  cert.h.assign(P.cols(), CPoly(n));

  const bool all_claims = ms.minors.size() <= opt.full_claim_limit;
  for (std::size_t iI = 0; iI < ms.Is.size(); ++iI)
    for (std::size_t iJ = 0; iJ < ms.Js.size(); ++iJ) {
      const CPoly& g = pm.coefficients[iI * ms.Js.size() + iJ];
      if (g.is_zero() && !all_claims) continue;
      const IndexSet &I = ms.Is[iI], &J = ms.Js[iJ];
      MinorTerm t{I, J, g, ms.at(iI, iJ), {}};
      for (std::size_t gm = 0; gm < r; ++gm) t.det_gamma.push_back(modified_minor(P, b, I, J, gm));
      for (std::size_t i = 0; i < P.rows(); ++i) {
        if (!claim_with(P, b, J, i, t.det, t.det_gamma))
          fail(Errc::InternalError, "minor identity sum_gamma p_ij(gamma) det(M^gamma) = b_i det(M) fails at i = " +
                                        std::to_string(i + 1));
        ++cert.claims_checked;
      }
      if (g.is_zero()) continue;
      for (std::size_t gm = 0; gm < r; ++gm)
        if (!t.det_gamma[gm].is_zero()) cert.h[J[gm]] += g * t.det_gamma[gm];
      cert.provenance.push_back(std::move(t));
    }

  VerifyResult vr = verify_certificate(P, b, cert);
  if (!vr.ok) fail(Errc::InternalError, "constructed certificate failed verification: " + vr.message);
  return cert;
}

VerifyResult verify_certificate(const PolyMatrix& P, const std::vector<CPoly>& b, const Certificate& c) {
  VerifyResult res;
  const int n = P.nvars();
  if (b.size() != P.rows() || c.h.size() != P.cols() || c.m < 0) {
    res.ok = false;
    res.message = "shape mismatch between P, b and the certificate";
    return res;
  }
  CPoly qm = c.q.pow(c.m);
  for (std::size_t i = 0; i < P.rows(); ++i) {
    CPoly diff = qm * b[i];
    for (std::size_t j = 0; j < P.cols(); ++j)
      if (!c.h[j].is_zero() && !P(i, j).is_zero()) diff -= c.h[j] * P(i, j);
    if (!diff.is_zero()) {
      res.ok = false;
      res.failing_i = static_cast<int>(i);
      res.difference = diff;
      res.message = "q^m b_" + std::to_string(i + 1) + " - sum_j h_j p_" + std::to_string(i + 1) + "j = " + diff.str();
      return res;
    }
  }
  if (!c.provenance.empty()) {
    CPoly s(n);
    for (const auto& t : c.provenance) {
      if (minor(P, t.I, t.J) != t.det) {
        res.ok = false;
        res.message = "recorded minor differs from det(M_IJ)";
        return res;
      }
      s += t.g * t.det;
    }
    if (s != qm) {
      res.ok = false;
      res.message = "sum g_IJ det(M_IJ) != q^m: difference " + (s - qm).str();
      return res;
    }
  }
  return res;
}

}  // namespace ccrank
