#include "ccrank/minors.hpp"

#include <algorithm>
#include <unordered_map>

namespace ccrank {

std::vector<IndexSet> subsets(std::size_t n, std::size_t k) {
  std::vector<IndexSet> out;
  if (k > n) return out;
  IndexSet s(k);
  for (std::size_t i = 0; i < k; ++i) s[i] = i;
  while (true) {
    out.push_back(s);
    std::size_t i = k;
    while (i > 0 && s[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++s[i - 1];
    for (std::size_t j = i; j < k; ++j) s[j] = s[j - 1] + 1;
  }
  return out;
}

std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::uint64_t b = 1;
  for (std::size_t i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

CPoly det(const PolyMatrix& M) {
  require(M.rows() == M.cols(), Errc::DimensionMismatch, "determinant of a non-square matrix");
  const std::size_t n = M.rows();
  const int nv = M.nvars();
  if (n == 0) return CPoly::constant(nv, GaussRational(1));
  require(n <= 20, Errc::ResourceCap, "determinant larger than 20x20");
  // f[mask] = det of rows n-|mask|.. against the columns in mask
  std::unordered_map<std::uint32_t, CPoly> f;
  f.emplace(0u, CPoly::constant(nv, GaussRational(1)));
  std::vector<std::uint32_t> layer{0u};
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t row = n - k;
    std::vector<std::uint32_t> next;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
      CPoly acc(nv);
      int sign = 1;
      for (std::size_t c = 0; c < n; ++c) {
        if (!(mask >> c & 1u)) continue;
        const CPoly& e = M(row, c);
        if (!e.is_zero()) {
          const CPoly& sub = f.at(mask & ~(1u << c));
          if (!sub.is_zero()) {
            CPoly t = e * sub;
            if (sign > 0)
              acc += t;
            else
              acc -= t;
          }
        }
        sign = -sign;
      }
      f.emplace(mask, std::move(acc));
      next.push_back(mask);
    }
    for (auto m : layer)
      if (m) f.erase(m);
    layer = std::move(next);
  }
  return f.at((1u << n) - 1);
}

PolyMatrix submatrix(const PolyMatrix& M, const IndexSet& rows, const IndexSet& cols) {
  PolyMatrix S(rows.size(), cols.size(), M.nvars());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) S(i, j) = M(rows[i], cols[j]);
  return S;
}

CPoly minor(const PolyMatrix& M, const IndexSet& rows, const IndexSet& cols) { return det(submatrix(M, rows, cols)); }

std::vector<Minor> all_minors(const PolyMatrix& M, std::size_t r) {
  std::vector<Minor> out;
  auto R = subsets(M.rows(), r), C = subsets(M.cols(), r);
  out.reserve(R.size() * C.size());
  for (const auto& I : R)
    for (const auto& J : C) out.push_back({I, J, minor(M, I, J)});
  return out;
}

CPoly monic(const CPoly& p) {
  if (p.is_zero()) return p;
  return p.lead_coeff().inverse() * p;
}

static bool minor_less(const CPoly& a, const CPoly& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
  return compare(a.lead_mono(), b.lead_mono(), a.order()) < 0;
}

std::vector<CPoly> distinct_minors(const std::vector<Minor>& minors) {
  std::vector<CPoly> out;
  for (const auto& m : minors) {
    if (m.value.is_zero()) continue;
    CPoly p = monic(m.value);
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
  }
  std::stable_sort(out.begin(), out.end(), minor_less);
  return out;
}

MinorStream::MinorStream(const PolyMatrix& M, std::size_t r)
    : M_(M), R_(subsets(M.rows(), r)), C_(subsets(M.cols(), r)) {}

bool MinorStream::next(CPoly& out) {
  while (i_ < R_.size()) {
    const IndexSet& I = R_[i_];
    const IndexSet& J = C_[j_];
    if (++j_ == C_.size()) {
      j_ = 0;
      ++i_;
    }
    ++visited_;
    CPoly p = monic(minor(M_, I, J));
    if (p.is_zero() || std::find(seen_.begin(), seen_.end(), p) != seen_.end()) continue;
    seen_.push_back(p);
    out = std::move(p);
    return true;
  }
  return false;
}

}  // namespace ccrank
