#include "ccrank/multipoly.hpp"

namespace ccrank {

const char* order_name(MonomialOrder o) {
  switch (o) {
    case MonomialOrder::GRevLex: return "grevlex";
    case MonomialOrder::Lex: return "lex";
    case MonomialOrder::GrLex: return "grlex";
  }
  return "?";
}

static void fill(int n, int pos, int left, Monomial& cur, std::vector<Monomial>& out) {
  if (pos == n - 1) {
    cur.e[pos] = static_cast<std::uint16_t>(left);
    out.push_back(cur);
    return;
  }
  for (int k = left; k >= 0; --k) {
    cur.e[pos] = static_cast<std::uint16_t>(k);
    fill(n, pos + 1, left - k, cur, out);
  }
}

std::vector<Monomial> monomials_of_degree(int n, int deg) {
  std::vector<Monomial> out;
  if (deg < 0) return out;
  Monomial cur(n);
  if (n == 0) {
    if (deg == 0) out.push_back(cur);
    return out;
  }
  fill(n, 0, deg, cur, out);
  return out;
}

}  // namespace ccrank
