#include "ccrank/opcore.hpp"

#include <algorithm>
#include <set>

namespace ccrank {

int Operator::order() const {
  int k = 0;
  for (int o : row_orders) k = std::max(k, o);
  return k;
}

bool Operator::fully_homogeneous() const {
  for (int o : row_orders)
    if (o != order()) return false;
  return true;
}

Operator make_operator(int n, std::size_t d, std::size_t l, std::map<Monomial, QMatrix> terms, std::string name) {
  Operator op;
  op.n = n;
  op.d = d;
  op.l = l;
  op.name = std::move(name);
  for (auto it = terms.begin(); it != terms.end();) {
    require(it->first.n == n, Errc::DimensionMismatch, "multi-index length differs from n");
    require(it->second.rows() == l && it->second.cols() == d, Errc::DimensionMismatch,
            "coefficient matrix must be " + std::to_string(l) + "x" + std::to_string(d));
    if (it->second.is_zero())
      it = terms.erase(it);
    else
      ++it;
  }
  op.terms = std::move(terms);
  std::vector<int> ord(l, -1);
  for (const auto& [alpha, A] : op.terms) {
    int deg = alpha.degree();
    for (std::size_t j = 0; j < l; ++j) {
      bool nz = false;
      for (std::size_t i = 0; i < d && !nz; ++i) nz = !is_zero(A(j, i));
      if (!nz) continue;
      if (ord[j] == -1)
        ord[j] = deg;
      else if (ord[j] != deg)
        fail(Errc::NotHomogeneous, "row " + std::to_string(j) + " mixes orders " + std::to_string(ord[j]) + " and " +
                                       std::to_string(deg));
    }
  }
  int kmax = 0;
  for (int o : ord) kmax = std::max(kmax, o);
  for (auto& o : ord)
    if (o == -1) o = kmax;
  op.row_orders = std::move(ord);
  return op;
}

SymbolMatrix symbol(const Operator& op) {
  SymbolMatrix S(op.l, op.d, op.n);
  for (const auto& [alpha, A] : op.terms)
    for (std::size_t j = 0; j < op.l; ++j)
      for (std::size_t i = 0; i < op.d; ++i)
        if (!is_zero(A(j, i))) S(j, i) += CPoly::monomial(alpha, GaussRational(A(j, i)));
  return S;
}

template <class F>
static Matrix<F> symbol_at_impl(const Operator& op, const std::vector<F>& xi) {
  require(static_cast<int>(xi.size()) == op.n, Errc::DimensionMismatch, "point dimension differs from n");
  Matrix<F> M(op.l, op.d);
  for (const auto& [alpha, A] : op.terms) {
    F w(1);
    for (int a = 0; a < op.n; ++a)
      for (int k = 0; k < alpha.e[a]; ++k) w *= xi[a];
    if (is_zero(w)) continue;
    for (std::size_t j = 0; j < op.l; ++j)
      for (std::size_t i = 0; i < op.d; ++i)
        if (!is_zero(A(j, i))) M(j, i) += w * F(A(j, i));
  }
  return M;
}

QMatrix symbol_at(const Operator& op, const std::vector<Rational>& xi) { return symbol_at_impl(op, xi); }
GMatrix symbol_at(const Operator& op, const std::vector<GaussRational>& xi) { return symbol_at_impl(op, xi); }

Operator compose(const Operator& outer, const Operator& inner) {
  require(outer.n == inner.n, Errc::DimensionMismatch, "compose: different space dimensions");
  require(inner.l == outer.d, Errc::DimensionMismatch,
          "compose: inner codomain " + std::to_string(inner.l) + " != outer domain " + std::to_string(outer.d));
  std::map<Monomial, QMatrix> t;
  for (const auto& [a, A] : outer.terms)
    for (const auto& [b, B] : inner.terms) {
      Monomial ab = a * b;
      QMatrix P = A * B;
      auto it = t.find(ab);
      if (it == t.end())
        t.emplace(ab, std::move(P));
      else
        it->second = it->second + P;
    }
  std::string nm = outer.name.empty() || inner.name.empty() ? "" : outer.name + "*" + inner.name;
  return make_operator(outer.n, inner.d, outer.l, std::move(t), nm);
}

Operator nabla_compose(const Operator& op, int times) {
  require(times >= 0, Errc::DimensionMismatch, "negative nabla power");
  Operator cur = op;
  for (int s = 0; s < times; ++s) {
    const std::size_t l = cur.l, nn = static_cast<std::size_t>(cur.n);
    std::map<Monomial, QMatrix> t;
    for (const auto& [alpha, A] : cur.terms)
      for (int a = 0; a < cur.n; ++a) {
        Monomial b = alpha * Monomial::var(cur.n, a);
        auto it = t.find(b);
        if (it == t.end()) it = t.emplace(b, QMatrix(nn * l, cur.d)).first;
        for (std::size_t j = 0; j < l; ++j)
          for (std::size_t i = 0; i < cur.d; ++i) it->second(a * l + j, i) += A(j, i);
      }
    std::vector<int> ro;
    for (int a = 0; a < cur.n; ++a)
      for (std::size_t j = 0; j < l; ++j) ro.push_back(cur.row_orders[j] + 1);
    Operator next = make_operator(cur.n, cur.d, nn * l, std::move(t), cur.name.empty() ? "" : "grad*" + cur.name);
    next.row_orders = ro;
    cur = std::move(next);
  }
  return cur;
}

Operator stack(const std::vector<Operator>& ops) {
  require(!ops.empty(), Errc::DimensionMismatch, "stack of nothing");
  const int n = ops[0].n;
  const std::size_t d = ops[0].d;
  std::size_t L = 0;
  for (const auto& o : ops) {
    require(o.n == n && o.d == d, Errc::DimensionMismatch, "stack: operators differ in n or domain");
    L += o.l;
  }
  std::map<Monomial, QMatrix> t;
  std::vector<int> ro;
  std::size_t off = 0;
  for (const auto& o : ops) {
    for (const auto& [alpha, A] : o.terms) {
      auto it = t.find(alpha);
      if (it == t.end()) it = t.emplace(alpha, QMatrix(L, d)).first;
      for (std::size_t j = 0; j < o.l; ++j)
        for (std::size_t i = 0; i < d; ++i) it->second(off + j, i) = A(j, i);
    }
    ro.insert(ro.end(), o.row_orders.begin(), o.row_orders.end());
    off += o.l;
  }
  Operator out = make_operator(n, d, L, std::move(t));
  out.row_orders = ro;
  return out;
}

Operator left_multiply(const QMatrix& R, const Operator& op) {
  require(R.cols() == op.l, Errc::DimensionMismatch, "left_multiply: matrix width differs from codomain");
  std::map<Monomial, QMatrix> t;
  for (const auto& [alpha, A] : op.terms) t.emplace(alpha, R * A);
  return make_operator(op.n, op.d, R.rows(), std::move(t), op.name);
}

Operator right_multiply(const Operator& op, const QMatrix& P) {
  require(P.rows() == op.d, Errc::DimensionMismatch, "right_multiply: matrix height differs from domain");
  std::map<Monomial, QMatrix> t;
  for (const auto& [alpha, A] : op.terms) t.emplace(alpha, A * P);
  Operator out = make_operator(op.n, P.cols(), op.l, std::move(t), op.name);
  return out;
}

Operator operator_from_symbol(const SymbolMatrix& S, std::string name) {
  std::map<Monomial, QMatrix> t;
  for (std::size_t j = 0; j < S.rows(); ++j)
    for (std::size_t i = 0; i < S.cols(); ++i)
      for (const auto& [m, c] : S(j, i).terms()) {
        require(c.is_real(), Errc::InternalError, "symbol has a non-real coefficient");
        auto it = t.find(m);
        if (it == t.end()) it = t.emplace(m, QMatrix(S.rows(), S.cols())).first;
        it->second(j, i) = c.re();
      }
  return make_operator(S.nvars(), S.cols(), S.rows(), std::move(t), std::move(name));
}

static Rational factorial(int k) {
  Rational f(1);
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

ImageSpanRoutes image_span_routes(const Operator& op, std::uint64_t seed) {
  require(op.fully_homogeneous(), Errc::NotHomogeneous, "image_span needs a fully homogeneous operator");
  const int k = op.order();
  ImageSpanRoutes r;
  // (a) symbol images at random rational points
  Rng rng(seed);
  QMatrix cols(op.l, 0);
  const std::size_t npts = op.d * op.l + 1;
  for (std::size_t s = 0; s < npts; ++s) {
    std::vector<Rational> xi(op.n);
    for (int a = 0; a < op.n; ++a) xi[a] = Rational(rng.uniform_int(-100, 100), rng.uniform_int(1, 20));
    for (auto& x : xi) x.canonicalize();
    cols = hstack(cols, symbol_at(op, xi));
  }
  r.sampled = cols.cols() ? canonical_span(cols) : QMatrix(op.l, 0);
  // (b) act on x^beta/beta! e_i and read off the constant outputs
  QMatrix outs(op.l, 0);
  for (std::size_t i = 0; i < op.d; ++i)
    for (const Monomial& beta : monomials_of_degree(op.n, k)) {
      Rational bf(1);
      for (int a = 0; a < op.n; ++a) bf *= factorial(beta.e[a]);
      PolyVec u(op.d, CPoly(op.n));
      u[i] = CPoly::monomial(beta, GaussRational(Rational(1) / bf));
      PolyVec w = ccrank::apply(op, u);
      QMatrix c(op.l, 1);
      for (std::size_t j = 0; j < op.l; ++j) {
        require(w[j].is_constant(), Errc::InternalError, "output of a homogeneous operator on P_k^h is not constant");
        if (!w[j].is_zero()) c(j, 0) = w[j].lead_coeff().re();
      }
      outs = hstack(outs, c);
    }
  r.monomial = outs.cols() ? canonical_span(outs) : QMatrix(op.l, 0);
  return r;
}

QMatrix image_span(const Operator& op, std::uint64_t seed) {
  ImageSpanRoutes r = image_span_routes(op, seed);
  if (r.sampled != r.monomial)
    fail(Errc::SpanMismatch, "sampled symbol images (dim " + std::to_string(r.sampled.cols()) +
                                 ") and monomial route (dim " + std::to_string(r.monomial.cols()) + ") disagree");
  return r.sampled;
}

Operator homogenize(const std::vector<Operator>& comps) {
  require(!comps.empty(), Errc::DimensionMismatch, "homogenize of nothing");
  int k = 0;
  for (const auto& c : comps) {
    require(c.n == comps[0].n && c.d == comps[0].d, Errc::DimensionMismatch, "components differ in n or domain");
    require(c.fully_homogeneous(), Errc::NotHomogeneous, "each component must be homogeneous");
    k = std::max(k, c.order());
  }
  std::vector<Operator> parts;
  for (const auto& c : comps) parts.push_back(nabla_compose(c, k - c.order()));
  if (parts.size() == 1) return parts[0];
  return stack(parts);
}

Operator homogenize(const Operator& op) {
  if (op.fully_homogeneous()) return op;
  std::vector<Operator> comps;
  std::set<int> orders(op.row_orders.begin(), op.row_orders.end());
  for (int o : orders) {
    std::vector<std::size_t> rows;
    for (std::size_t j = 0; j < op.l; ++j)
      if (op.row_orders[j] == o) rows.push_back(j);
    std::map<Monomial, QMatrix> t;
    for (const auto& [alpha, A] : op.terms)
      if (alpha.degree() == o) t.emplace(alpha, A.select_rows(rows));
    Operator c = make_operator(op.n, op.d, rows.size(), std::move(t));
    c.row_orders.assign(rows.size(), o);
    comps.push_back(std::move(c));
  }
  return homogenize(comps);
}

std::vector<JetIndex> jet_layout(int n, std::size_t d, int order) {
  std::vector<JetIndex> out;
  auto betas = monomials_of_degree(n, order);
  for (std::size_t i = 0; i < d; ++i)
    for (const auto& b : betas) out.push_back({i, b});
  return out;
}

SymbolMatrix jet_symbol(int n, std::size_t d, int order) {
  auto jet = jet_layout(n, d, order);
  SymbolMatrix S(jet.size(), d, n);
  for (std::size_t r = 0; r < jet.size(); ++r) S(r, jet[r].component) = CPoly::monomial(jet[r].beta, GaussRational(1));
  return S;
}

OrderReduction reduce_order(const Operator& op) {
  OrderReduction res;
  const int l = op.order();
  if (l <= 1) {
    res.first_order = op;
    res.compatibility = make_operator(op.n, op.d, 0, {});
    res.unchanged = true;
    return res;
  }
  require(op.fully_homogeneous(), Errc::NotHomogeneous, "reduce_order needs a fully homogeneous operator");
  const int n = op.n;
  res.jet = jet_layout(n, op.d, l - 1);
  const std::size_t J = res.jet.size();
  auto index_of = [&](std::size_t i, const Monomial& b) {
    for (std::size_t r = 0; r < J; ++r)
      if (res.jet[r].component == i && res.jet[r].beta == b) return r;
    fail(Errc::InternalError, "jet index not found");
  };

  std::map<Monomial, QMatrix> t;
  for (const auto& [alpha, A] : op.terms) {
    int a = 0;
    while (alpha.e[a] == 0) ++a;
    Monomial ea = Monomial::var(n, a);
    Monomial beta = alpha / ea;
    auto it = t.find(ea);
    if (it == t.end()) it = t.emplace(ea, QMatrix(op.l, J)).first;
    for (std::size_t j = 0; j < op.l; ++j)
      for (std::size_t i = 0; i < op.d; ++i)
        if (!is_zero(A(j, i))) it->second(j, index_of(i, beta)) += A(j, i);
  }
  res.first_order = make_operator(n, J, op.l, std::move(t), op.name.empty() ? "" : op.name + "_jet");

  // rows d_a w_{i, gamma - e_a} - d_b w_{i, gamma - e_b} for consecutive a < b in supp(gamma)
  struct Row {
    int a, b;
    std::size_t ca, cb;
  };
  std::vector<Row> rows;
  for (std::size_t i = 0; i < op.d; ++i)
    for (const auto& gamma : monomials_of_degree(n, l)) {
      std::vector<int> supp;
      for (int a = 0; a < n; ++a)
        if (gamma.e[a]) supp.push_back(a);
      for (std::size_t s = 0; s + 1 < supp.size(); ++s) {
        int a = supp[s], b = supp[s + 1];
        rows.push_back({a, b, index_of(i, gamma / Monomial::var(n, a)), index_of(i, gamma / Monomial::var(n, b))});
      }
    }
  std::map<Monomial, QMatrix> tc;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (int s = 0; s < 2; ++s) {
      Monomial e = Monomial::var(n, s ? rows[r].b : rows[r].a);
      auto it = tc.find(e);
      if (it == tc.end()) it = tc.emplace(e, QMatrix(rows.size(), J)).first;
      it->second(r, s ? rows[r].cb : rows[r].ca) += s ? -1 : 1;
    }
  }
  res.compatibility = make_operator(n, J, rows.size(), std::move(tc), "jet_curl");
  if (rows.empty()) res.compatibility.row_orders.clear();

  SymbolMatrix js = jet_symbol(n, op.d, l - 1);
  if (symbol(res.first_order) * js != symbol(op))
    fail(Errc::InternalError, "first-order reformulation does not reproduce the symbol");
  if (!rows.empty() && !(symbol(res.compatibility) * js).is_zero())
    fail(Errc::InternalError, "compatibility rows do not annihilate the jet");
  return res;
}

std::size_t sym_index(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  std::size_t idx = 0;
  for (int r = 0; r < i; ++r) idx += static_cast<std::size_t>(n - r);
  return idx + static_cast<std::size_t>(j - i);
}

namespace {

struct Builder {
  int n;
  std::size_t d, l;
  std::map<Monomial, QMatrix> t;
  Builder(int n_, std::size_t d_, std::size_t l_) : n(n_), d(d_), l(l_) {}
  void add(const Monomial& alpha, std::size_t row, std::size_t col, const Rational& c) {
    auto it = t.find(alpha);
    if (it == t.end()) it = t.emplace(alpha, QMatrix(l, d)).first;
    it->second(row, col) += c;
  }
  Monomial e(int a) const { return Monomial::var(n, a); }
  Monomial e(int a, int b) const { return Monomial::var(n, a) * Monomial::var(n, b); }
  Operator done(const std::string& name) { return make_operator(n, d, l, std::move(t), name); }
};

Operator identity_op(int n, int N) {
  Builder b(n, N, N);
  for (int j = 0; j < N; ++j) b.add(Monomial(n), j, j, 1);
  Operator op = b.done("identity");
  op.row_orders.assign(N, 0);
  return op;
}

Operator gradient_op(int n, int N) {
  Builder b(n, N, N * n);
  for (int j = 0; j < N; ++j)
    for (int a = 0; a < n; ++a) b.add(b.e(a), j * n + a, j, 1);
  return b.done("gradient");
}

Operator laplacian_op(int n, int N) {
  Builder b(n, N, N);
  for (int j = 0; j < N; ++j)
    for (int a = 0; a < n; ++a) b.add(b.e(a, a), j, j, 1);
  return b.done("laplacian");
}

Operator curlcurl_op(int n, bool full) {
  const std::size_t d = static_cast<std::size_t>(n * (n + 1) / 2);
  using Row = std::map<Monomial, std::vector<Rational>>;
  std::vector<Row> rows;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          Row r;
          auto add = [&](int p, int q, int s, int u, int c) {
            Monomial m = Monomial::var(n, p) * Monomial::var(n, q);
            auto it = r.find(m);
            if (it == r.end()) it = r.emplace(m, std::vector<Rational>(d, Rational(0))).first;
            it->second[sym_index(n, s, u)] += c;
          };
          add(i, j, k, l, 1);
          add(k, l, i, j, 1);
          add(i, l, k, j, -1);
          add(k, j, i, l, -1);
          for (auto it = r.begin(); it != r.end();) {
            bool z = std::all_of(it->second.begin(), it->second.end(), [](const Rational& x) { return sgn(x) == 0; });
            it = z ? r.erase(it) : std::next(it);
          }
          rows.push_back(std::move(r));
        }
  if (!full) {
    std::vector<Row> kept;
    for (auto r : rows) {
      if (r.empty()) continue;
      // sign normalization: first nonzero coefficient positive
      Rational first = 0;
      for (const auto& x : r.begin()->second)
        if (sgn(x)) {
          first = x;
          break;
        }
      if (sgn(first) < 0)
        for (auto& [m, v] : r)
          for (auto& x : v) x = -x;
      if (std::find(kept.begin(), kept.end(), r) == kept.end()) kept.push_back(std::move(r));
    }
    rows = std::move(kept);
  }
  Builder b(n, d, rows.size());
  for (std::size_t j = 0; j < rows.size(); ++j)
    for (const auto& [m, v] : rows[j])
      for (std::size_t c = 0; c < d; ++c)
        if (sgn(v[c])) b.add(m, j, c, v[c]);
  Operator op = b.done(full ? "curlcurl_full" : "curlcurl");
  op.row_orders.assign(rows.size(), 2);
  return op;
}

}  // namespace

std::vector<std::string> builtin_names() {
  return {"gradient", "kgradient", "symgrad", "devsymgrad", "curl", "curlcurl",
          "div",      "divsym",    "laplacian", "bilaplacian", "identity", "perpgrad"};
}

Operator builtin(const std::string& name, const BuiltinParams& p) {
  const int n = p.n, N = p.N;
  require(n >= 1 && n <= kMaxVars, Errc::DimensionMismatch, "space dimension out of range");
  require(N >= 1, Errc::DimensionMismatch, "component count must be positive");
  if (name == "identity") return identity_op(n, N);
  if (name == "gradient") return gradient_op(n, N);
  if (name == "kgradient") {
    Operator op = nabla_compose(identity_op(n, N), p.k);
    op.name = "kgradient";
    return op;
  }
  if (name == "symgrad" || name == "devsymgrad") {
    const std::size_t d = n, l = static_cast<std::size_t>(n * (n + 1) / 2);
    Builder b(n, d, l);
    Rational half(1, 2);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        std::size_t r = sym_index(n, i, j);
        b.add(b.e(i), r, j, half);
        b.add(b.e(j), r, i, half);
        if (name == "devsymgrad" && i == j)
          for (int k = 0; k < n; ++k) b.add(b.e(k), r, k, Rational(-1, n));
      }
    return b.done(name);
  }
  if (name == "curl") {
    require(n >= 2, Errc::DimensionMismatch, "curl needs n >= 2");
    const std::size_t pairs = static_cast<std::size_t>(n * (n - 1) / 2);
    Builder b(n, N * n, N * pairs);
    for (int j = 0; j < N; ++j) {
      std::size_t r = j * pairs;
      for (int k = 0; k < n; ++k)
        for (int i = k + 1; i < n; ++i, ++r) {
          b.add(b.e(k), r, j * n + i, 1);   // d_k u_{ji}
          b.add(b.e(i), r, j * n + k, -1);  // - d_i u_{jk}
        }
    }
    return b.done("curl");
  }
  if (name == "curlcurl") return curlcurl_op(n, p.full);
  if (name == "div") {
    Builder b(n, n, 1);
    for (int a = 0; a < n; ++a) b.add(b.e(a), 0, a, 1);
    return b.done("div");
  }
  if (name == "divsym") {
    Builder b(n, n * (n + 1) / 2, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) b.add(b.e(j), i, sym_index(n, i, j), 1);
    return b.done("divsym");
  }
  if (name == "laplacian") return laplacian_op(n, N);
  if (name == "bilaplacian") {
    Operator op = compose(laplacian_op(n, N), laplacian_op(n, N));
    op.name = "bilaplacian";
    return op;
  }
  if (name == "perpgrad") {
    require(n == 2, Errc::DimensionMismatch, "perpgrad is two-dimensional");
    Builder b(2, 1, 2);
    b.add(b.e(1), 0, 0, -1);
    b.add(b.e(0), 1, 0, 1);
    return b.done("perpgrad");
  }
  fail(Errc::UnknownName, "no builtin operator named '" + name + "'");
}

PolyVec apply(const Operator& op, const PolyVec& u) {
  require(u.size() == op.d, Errc::DimensionMismatch, "field has wrong number of components");
  PolyVec out(op.l, CPoly(op.n));
  for (const auto& [alpha, A] : op.terms)
    for (std::size_t i = 0; i < op.d; ++i) {
      if (u[i].is_zero()) continue;
      CPoly du = u[i];
      for (int a = 0; a < op.n; ++a)
        for (int k = 0; k < alpha.e[a]; ++k) du = du.derivative(a);
      if (du.is_zero()) continue;
      for (std::size_t j = 0; j < op.l; ++j)
        if (!is_zero(A(j, i))) out[j] += GaussRational(A(j, i)) * du;
    }
  return out;
}

bool PolySpace::independent() const {
  if (basis.empty()) return true;
  std::vector<std::pair<std::size_t, Monomial>> keys;
  for (const auto& v : basis)
    for (std::size_t c = 0; c < v.size(); ++c)
      for (const auto& [m, x] : v[c].terms())
        if (std::find(keys.begin(), keys.end(), std::make_pair(c, m)) == keys.end()) keys.push_back({c, m});
  GMatrix M(basis.size(), keys.size());
  for (std::size_t r = 0; r < basis.size(); ++r)
    for (std::size_t k = 0; k < keys.size(); ++k) M(r, k) = basis[r][keys[k].first].coeff(keys[k].second);
  return rank(M) == basis.size();
}

}  // namespace ccrank
