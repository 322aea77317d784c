#include "ccrank/crank.hpp"

#include <algorithm>

#include "ccrank/minors.hpp"

namespace ccrank {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "Yes";
    case Verdict::No: return "No";
    case Verdict::Undetermined: return "Undetermined";
  }
  return "?";
}

std::size_t rank_at(const SymbolMatrix& S, const Point& xi) { return rank(S.evaluate(xi)); }

std::size_t generic_rank(const SymbolMatrix& S, int samples, std::uint64_t seed) {
  require(samples >= 1, Errc::DimensionMismatch, "generic_rank needs at least one sample");
  std::size_t r = 0, top = std::min(S.rows(), S.cols());
  for (const auto& p : random_points(S.nvars(), samples, seed)) {
    r = std::max(r, rank_at(S, p));
    if (r == top) break;
  }
  return r;
}

std::optional<Point> rank_drop_witness(const SymbolMatrix& S, std::size_t r, const std::vector<CPoly>& minors,
                                       int nrandom, std::uint64_t seed) {
  for (const auto& p : witness_search_points(S.nvars(), minors, nrandom, seed)) {
    bool nonzero = std::any_of(p.begin(), p.end(), [](const GaussRational& x) { return !x.is_zero(); });
    if (nonzero && rank_at(S, p) < r) return p;
  }
  return std::nullopt;
}

namespace {

bool sampled_real(const SymbolMatrix& S, std::size_t r, int count, std::uint64_t seed) {
  for (const auto& p : random_points(S.nvars(), count, seed ^ 0x9E3779B97F4A7C15ull, 100, false))
    if (rank_at(S, p) != r) return false;
  return true;
}

}  // namespace

RankReport is_constant_rank_C(const SymbolMatrix& S, const RankOptions& opt) {
  RankReport rep;
  const int n = S.nvars();
  for (std::size_t j = 0; j < S.rows(); ++j) {
    int deg = -1;
    for (std::size_t i = 0; i < S.cols(); ++i) {
      const CPoly& e = S(j, i);
      require(e.is_homogeneous(), Errc::NotHomogeneous, "symbol row " + std::to_string(j) + " is not homogeneous");
      if (e.is_zero()) continue;
      int dd = e.total_degree();
      require(deg == -1 || deg == dd, Errc::NotHomogeneous,
              "symbol row " + std::to_string(j) + " mixes degrees " + std::to_string(deg) + " and " + std::to_string(dd));
      deg = dd;
    }
  }
  rep.generic_rank = generic_rank(S, opt.samples, opt.seed);
  const std::size_t r = rep.generic_rank;
  rep.kernel_dim = S.cols() - r;
  rep.real_samples = opt.real_samples;
  rep.sampled_real_constant = sampled_real(S, r, opt.real_samples, opt.seed);

  if (r == 0) {
    rep.constant_over_C = Verdict::Yes;
    rep.exponents.assign(n, 0);
    rep.reason = "symbol vanishes identically";
    rep.c_elliptic = S.cols() == 0;
    return rep;
  }

  const std::uint64_t total = binomial(S.rows(), r) * binomial(S.cols(), r);
  rep.lazy_minors = total > opt.lazy_threshold;
  std::vector<CPoly> pool;
  std::optional<MinorStream> stream;
  if (rep.lazy_minors)
    stream.emplace(S, r);
  else
    pool = distinct_minors(all_minors(S, r));

  // grow the generator set until the ideal is zero-dimensional
  std::vector<CPoly> used;
  std::size_t want = std::max<std::size_t>(2, static_cast<std::size_t>(n));
  std::optional<TrackedBasis> tb;
  bool exhausted = false;
  try {
    while (true) {
      if (stream) {
        CPoly p;
        while (used.size() < want && stream->next(p)) used.push_back(p);
        exhausted = used.size() < want;
      } else {
        used.assign(pool.begin(), pool.begin() + std::min(want, pool.size()));
        exhausted = used.size() == pool.size();
      }
      tb = buchberger(used);
      if (tb->zero_dimensional() || exhausted) break;
      want *= 2;
    }
  } catch (const Error& e) {
    if (e.code() != Errc::ResourceCap) throw;
    rep.reason = e.what();
    tb.reset();
  }
  rep.minors_used = used.size();
  rep.cap = opt.cap >= 0 ? opt.cap : default_cap(used);

  if (tb && !tb->zero_dimensional()) {
    rep.reason = "minor ideal is not zero-dimensional: the symbol loses rank on a complex line";
  } else if (tb) {
    VarietyResult vr = variety_is_origin(*tb, rep.cap);
    if (vr.is_origin) {
      rep.constant_over_C = Verdict::Yes;
      rep.exponents = vr.exponents;
      rep.c_elliptic = r == S.cols();
      rep.reason = "minor ideal has the origin as its only zero";
      return rep;
    }
    rep.reason = vr.reason;
  }

  auto w = rank_drop_witness(S, r, used, opt.witness_random, opt.seed);
  if (w) {
    rep.witness_rank = rank_at(S, *w);
    require(rep.witness_rank < r, Errc::InternalError, "rank-drop witness failed re-verification");
    rep.constant_over_C = Verdict::No;
    rep.witness = w;
    rep.reason = "rank " + std::to_string(rep.witness_rank) + " < " + std::to_string(r) + " at the witness";
    return rep;
  }
  rep.constant_over_C = Verdict::Undetermined;
  if (rep.reason.empty()) rep.reason = "no certificate and no witness within the cap";
  return rep;
}

bool is_C_elliptic(const SymbolMatrix& S, const RankOptions& opt) { return is_constant_rank_C(S, opt).c_elliptic; }

}  // namespace ccrank
