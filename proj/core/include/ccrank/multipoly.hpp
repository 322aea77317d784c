#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ccrank/exactnum.hpp"

namespace ccrank {

inline constexpr int kMaxVars = 16;

struct Monomial {
  std::array<std::uint16_t, kMaxVars> e{};
  int n = 0;

  Monomial() = default;
  explicit Monomial(int nvars) : n(nvars) {
    require(nvars >= 0 && nvars <= kMaxVars, Errc::DimensionMismatch, "too many variables");
  }
  static Monomial from(const std::vector<int>& exps) {
    Monomial m(static_cast<int>(exps.size()));
    for (std::size_t i = 0; i < exps.size(); ++i) {
      require(exps[i] >= 0, Errc::ParseError, "negative exponent");
      m.e[i] = static_cast<std::uint16_t>(exps[i]);
    }
    return m;
  }
  static Monomial var(int nvars, int a, int power = 1) {
    Monomial m(nvars);
    m.e[a] = static_cast<std::uint16_t>(power);
    return m;
  }

  int degree() const {
    int d = 0;
    for (int i = 0; i < n; ++i) d += e[i];
    return d;
  }
  std::vector<int> exponents() const { return std::vector<int>(e.begin(), e.begin() + n); }

  bool divides(const Monomial& o) const {
    for (int i = 0; i < n; ++i)
      if (e[i] > o.e[i]) return false;
    return true;
  }
  friend Monomial operator*(Monomial a, const Monomial& b) {
    for (int i = 0; i < a.n; ++i) a.e[i] = static_cast<std::uint16_t>(a.e[i] + b.e[i]);
    return a;
  }
  // assumes b divides a
  friend Monomial operator/(Monomial a, const Monomial& b) {
    for (int i = 0; i < a.n; ++i) a.e[i] = static_cast<std::uint16_t>(a.e[i] - b.e[i]);
    return a;
  }
  friend Monomial lcm(Monomial a, const Monomial& b) {
    for (int i = 0; i < a.n; ++i) a.e[i] = std::max(a.e[i], b.e[i]);
    return a;
  }
  friend bool coprime(const Monomial& a, const Monomial& b) {
    for (int i = 0; i < a.n; ++i)
      if (a.e[i] && b.e[i]) return false;
    return true;
  }
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.n == b.n && a.e == b.e; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }
  // plain lexicographic, for use as a map key
  friend bool operator<(const Monomial& a, const Monomial& b) {
    if (a.n != b.n) return a.n < b.n;
    return a.e > b.e;
  }
};

enum class MonomialOrder { GRevLex, Lex, GrLex };

const char* order_name(MonomialOrder o);

// >0 when a is larger than b
inline int compare(const Monomial& a, const Monomial& b, MonomialOrder ord) {
  const int n = a.n;
  if (ord != MonomialOrder::Lex) {
    int da = a.degree(), db = b.degree();
    if (da != db) return da > db ? 1 : -1;
  }
  if (ord == MonomialOrder::GRevLex) {
    for (int i = n - 1; i >= 0; --i)
      if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
    return 0;
  }
  for (int i = 0; i < n; ++i)
    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? 1 : -1;
  return 0;
}

struct Homogeneity {
  enum Kind { Homogeneous, Inhomogeneous, Zero } kind;
  int degree = -1;
  friend bool operator==(const Homogeneity& a, const Homogeneity& b) {
    return a.kind == b.kind && a.degree == b.degree;
  }
};

template <class F>
class Poly {
 public:
  using Term = std::pair<Monomial, F>;

  Poly() = default;
  explicit Poly(int n, MonomialOrder ord = MonomialOrder::GRevLex) : n_(n), ord_(ord) {}

  static Poly constant(int n, const F& c, MonomialOrder ord = MonomialOrder::GRevLex) {
    Poly p(n, ord);
    if (!ccrank::is_zero(c)) p.t_.push_back({Monomial(n), c});
    return p;
  }
  static Poly variable(int n, int a, MonomialOrder ord = MonomialOrder::GRevLex) {
    Poly p(n, ord);
    p.t_.push_back({Monomial::var(n, a), F(1)});
    return p;
  }
  static Poly monomial(const Monomial& m, const F& c, MonomialOrder ord = MonomialOrder::GRevLex) {
    Poly p(m.n, ord);
    if (!ccrank::is_zero(c)) p.t_.push_back({m, c});
    return p;
  }
  static Poly from_terms(int n, std::vector<Term> terms, MonomialOrder ord = MonomialOrder::GRevLex) {
    Poly p(n, ord);
    for (const auto& t : terms)
      require(t.first.n == n, Errc::DimensionMismatch, "monomial length differs from variable count");
    p.t_ = std::move(terms);
    p.normalize();
    return p;
  }

  int nvars() const { return n_; }
  MonomialOrder order() const { return ord_; }
  const std::vector<Term>& terms() const { return t_; }
  std::size_t size() const { return t_.size(); }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].first.degree() == 0); }
  const Monomial& lead_mono() const { return t_.front().first; }
  const F& lead_coeff() const { return t_.front().second; }

  int total_degree() const {
    int d = -1;
    for (const auto& t : t_) d = std::max(d, t.first.degree());
    return d;
  }

  Homogeneity homogeneity() const {
    if (t_.empty()) return {Homogeneity::Zero, -1};
    int d = t_[0].first.degree();
    for (const auto& t : t_)
      if (t.first.degree() != d) return {Homogeneity::Inhomogeneous, -1};
    return {Homogeneity::Homogeneous, d};
  }
  bool is_homogeneous() const { return homogeneity().kind != Homogeneity::Inhomogeneous; }

  Poly homogeneous_part(int deg) const {
    Poly p(n_, ord_);
    for (const auto& t : t_)
      if (t.first.degree() == deg) p.t_.push_back(t);
    return p;
  }

  F coeff(const Monomial& m) const {
    for (const auto& t : t_)
      if (t.first == m) return t.second;
    return F(0);
  }

  Poly with_order(MonomialOrder ord) const {
    Poly p = *this;
    p.ord_ = ord;
    p.sort();
    return p;
  }

  Poly operator-() const {
    Poly p = *this;
    for (auto& t : p.t_) t.second = -t.second;
    return p;
  }
  friend Poly operator+(const Poly& a, const Poly& b) { return merge(a, b, F(1)); }
  friend Poly operator-(const Poly& a, const Poly& b) { return merge(a, b, F(-1)); }
  Poly& operator+=(const Poly& b) { return *this = merge(*this, b, F(1)); }
  Poly& operator-=(const Poly& b) { return *this = merge(*this, b, F(-1)); }

  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check_compatible(b);
    if (a.is_zero() || b.is_zero()) return Poly(std::max(a.n_, b.n_), a.ord_);
    if (a.size() == 1) return b.mul_term(a.t_[0].first, a.t_[0].second);
    if (b.size() == 1) return a.mul_term(b.t_[0].first, b.t_[0].second);
    std::vector<Term> prod;
    prod.reserve(a.size() * b.size());
    for (const auto& x : a.t_)
      for (const auto& y : b.t_) prod.push_back({x.first * y.first, F(x.second * y.second)});
    Poly p(a.n_, a.ord_);
    p.t_ = std::move(prod);
    p.normalize();
    return p;
  }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }

  friend Poly operator*(const F& c, const Poly& p) {
    if (ccrank::is_zero(c)) return Poly(p.n_, p.ord_);
    Poly q = p;
    for (auto& t : q.t_) t.second *= c;
    return q;
  }

  // c * x^m * this; order is multiplicative so sortedness survives
  Poly mul_term(const Monomial& m, const F& c) const {
    Poly q(n_, ord_);
    if (ccrank::is_zero(c)) return q;
    q.t_.reserve(t_.size());
    for (const auto& t : t_) q.t_.push_back({t.first * m, F(t.second * c)});
    return q;
  }

  // this - c * x^m * g, single merge pass
  Poly sub_mul_term(const Monomial& m, const F& c, const Poly& g) const {
    Poly q(n_, ord_);
    q.t_.reserve(t_.size() + g.t_.size());
    std::size_t i = 0, j = 0;
    while (i < t_.size() || j < g.t_.size()) {
      if (j == g.t_.size()) {
        q.t_.push_back(t_[i++]);
        continue;
      }
      Monomial gm = g.t_[j].first * m;
      if (i == t_.size()) {
        q.t_.push_back({gm, F(-(g.t_[j].second * c))});
        ++j;
        continue;
      }
      int cmp = compare(t_[i].first, gm, ord_);
      if (cmp > 0) {
        q.t_.push_back(t_[i++]);
      } else if (cmp < 0) {
        q.t_.push_back({gm, F(-(g.t_[j].second * c))});
        ++j;
      } else {
        F v = t_[i].second - g.t_[j].second * c;
        if (!ccrank::is_zero(v)) q.t_.push_back({gm, std::move(v)});
        ++i;
        ++j;
      }
    }
    return q;
  }

  Poly pow(int k) const {
    require(k >= 0, Errc::InternalError, "negative power");
    Poly r = constant(n_, F(1), ord_), b = *this;
    while (k) {
      if (k & 1) r = r * b;
      k >>= 1;
      if (k) b = b * b;
    }
    return r;
  }

  Poly derivative(int a) const {
    Poly q(n_, ord_);
    for (const auto& t : t_) {
      if (t.first.e[a] == 0) continue;
      Monomial m = t.first;
      int k = m.e[a]--;
      q.t_.push_back({m, F(t.second * F(k))});
    }
    q.sort();
    return q;
  }

  template <class P>
  P evaluate(const std::vector<P>& x) const {
    require(static_cast<int>(x.size()) == n_, Errc::DimensionMismatch,
            "point has " + std::to_string(x.size()) + " coordinates, polynomial has " + std::to_string(n_) + " variables");
    P acc(0);
    std::vector<std::vector<P>> powers(n_);
    for (const auto& t : t_) {
      P v(t.second);
      for (int i = 0; i < n_; ++i) {
        int k = t.first.e[i];
        if (!k) continue;
        auto& pw = powers[i];
        if (pw.empty()) pw.push_back(P(1));
        while (static_cast<int>(pw.size()) <= k) pw.push_back(pw.back() * x[i]);
        v *= pw[k];
      }
      acc += v;
    }
    return acc;
  }

  std::complex<double> evaluate_numeric(const std::vector<std::complex<double>>& x) const;

  friend bool operator==(const Poly& a, const Poly& b) { return a.t_ == b.t_ && (a.n_ == b.n_ || a.t_.empty()); }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  std::string str() const;

 private:
  void check_compatible(const Poly& b) const {
    require(n_ == b.n_ || is_zero() || b.is_zero(), Errc::DimensionMismatch, "variable counts differ");
  }
  void sort() {
    std::sort(t_.begin(), t_.end(), [this](const Term& x, const Term& y) { return compare(x.first, y.first, ord_) > 0; });
  }
  void normalize() {
    sort();
    std::vector<Term> out;
    out.reserve(t_.size());
    for (auto& t : t_) {
      if (!out.empty() && out.back().first == t.first)
        out.back().second += t.second;
      else
        out.push_back(std::move(t));
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const Term& x) { return ccrank::is_zero(x.second); }), out.end());
    t_ = std::move(out);
  }
  static Poly merge(const Poly& a, const Poly& b, const F& sign) {
    a.check_compatible(b);
    if (b.is_zero()) return a;
    if (a.is_zero()) return sign * b;
    return a.sub_mul_term(Monomial(a.n_), -sign, b);
  }

  int n_ = 0;
  MonomialOrder ord_ = MonomialOrder::GRevLex;
  std::vector<Term> t_;
};

using CPoly = Poly<GaussRational>;
using QPoly = Poly<Rational>;

template <class F>
std::complex<double> Poly<F>::evaluate_numeric(const std::vector<std::complex<double>>& x) const {
  require(static_cast<int>(x.size()) == n_, Errc::DimensionMismatch, "point dimension");
  std::complex<double> acc = 0;
  for (const auto& t : t_) {
    std::complex<double> v;
    if constexpr (std::is_same_v<F, GaussRational>)
      v = t.second.to_complex();
    else
      v = to_double(t.second);
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < t.first.e[i]; ++k) v *= x[i];
    acc += v;
  }
  return acc;
}

template <class F>
std::string Poly<F>::str() const {
  if (t_.empty()) return "0";
  std::string s;
  for (std::size_t k = 0; k < t_.size(); ++k) {
    const auto& [m, c] = t_[k];
    std::string cs = to_string(c);
    bool unit = (c == F(1)), negunit = (c == F(-1));
    std::string mono;
    for (int i = 0; i < n_; ++i) {
      if (!m.e[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i + 1);
      if (m.e[i] > 1) mono += "^" + std::to_string(m.e[i]);
    }
    std::string term;
    if (mono.empty())
      term = cs;
    else if (unit)
      term = mono;
    else if (negunit)
      term = "-" + mono;
    else if (cs.find_first_of("+i") != std::string::npos || cs.find('-', 1) != std::string::npos)
      term = "(" + cs + ")*" + mono;
    else
      term = cs + "*" + mono;
    if (k && term[0] != '-') s += "+";
    s += term;
  }
  return s;
}

inline CPoly to_cpoly(const QPoly& p) {
  std::vector<CPoly::Term> t;
  for (const auto& [m, c] : p.terms()) t.push_back({m, GaussRational(c)});
  return CPoly::from_terms(p.nvars(), std::move(t), p.order());
}

// all monomials of total degree deg in n variables, lexicographically descending
std::vector<Monomial> monomials_of_degree(int n, int deg);

inline CPoly xvar(int n, int a) { return CPoly::variable(n, a); }
inline CPoly cconst(int n, const GaussRational& c) { return CPoly::constant(n, c); }

}  // namespace ccrank
