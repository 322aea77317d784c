#include "ccrank/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "ccrank/error.hpp"

namespace ccrank {

double round12(double x) {
  if (!std::isfinite(x) || x == 0) return x == 0 ? 0.0 : x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

json to_json(const Rational& q) { return to_string(q); }

json to_json(const GaussRational& z) {
  if (z.is_real()) return to_string(z.re());
  return json{{"re", to_string(z.re())}, {"im", to_string(z.im())}};
}

json to_json(const Point& p) {
  json a = json::array();
  for (const auto& z : p) a.push_back(to_json(z));
  return a;
}

json to_json(const CPoly& p) {
  json terms = json::array();
  for (const auto& [m, c] : p.terms()) {
    std::vector<int> e(m.e.begin(), m.e.begin() + m.n);
    terms.push_back(json{{"exp", e}, {"coeff", to_json(c)}});
  }
  return json{{"n", p.nvars()}, {"terms", terms}};
}

json to_json(const PolyMatrix& M) {
  json rows = json::array();
  for (std::size_t i = 0; i < M.rows(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < M.cols(); ++j) r.push_back(to_json(M(i, j)));
    rows.push_back(r);
  }
  return json{{"rows", M.rows()}, {"cols", M.cols()}, {"n", M.nvars()}, {"entries", rows}};
}

json to_json(const QMatrix& M) {
  json rows = json::array();
  for (std::size_t i = 0; i < M.rows(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < M.cols(); ++j) r.push_back(to_string(M(i, j)));
    rows.push_back(r);
  }
  return rows;
}

json to_json(const Operator& op) {
  json terms = json::array();
  for (const auto& [alpha, A] : op.terms) {
    if (A.is_zero()) continue;
    std::vector<int> e(alpha.e.begin(), alpha.e.begin() + alpha.n);
    terms.push_back(json{{"alpha", e}, {"matrix", to_json(A)}});
  }
  json j{{"n", op.n}, {"dim_domain", op.d}, {"dim_codomain", op.l}, {"terms", terms}};
  if (!op.name.empty()) j["name"] = op.name;
  j["row_orders"] = op.row_orders;
  return j;
}

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(Errc::ParseError, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

}  // namespace

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  fail(Errc::ParseError, "rational must be a string: " + j.dump());
}

GaussRational gauss_from_json(const json& j) {
  if (j.is_object()) {
    Rational re = j.contains("re") ? rational_from_json(j.at("re")) : Rational(0);
    Rational im = j.contains("im") ? rational_from_json(j.at("im")) : Rational(0);
    return GaussRational(re, im);
  }
  if (j.is_string()) return parse_gauss(j.get<std::string>());
  return GaussRational(rational_from_json(j));
}

Point point_from_json(const json& j) {
  require(j.is_array(), Errc::ParseError, "point must be an array");
  Point p;
  for (const auto& z : j) p.push_back(gauss_from_json(z));
  return p;
}

CPoly poly_from_json(const json& j) {
  const int n = field(j, "n").get<int>();
  std::vector<CPoly::Term> terms;
  for (const auto& t : field(j, "terms")) {
    auto e = field(t, "exp").get<std::vector<int>>();
    require(static_cast<int>(e.size()) == n, Errc::ParseError, "exponent length differs from n");
    terms.push_back({Monomial::from(e), gauss_from_json(field(t, "coeff"))});
  }
  return CPoly::from_terms(n, std::move(terms));
}

std::vector<CPoly> polys_from_json(const json& j) {
  const json& a = j.is_object() ? field(j, "polys") : j;
  require(a.is_array(), Errc::ParseError, "expected an array of polynomials");
  std::vector<CPoly> out;
  for (const auto& p : a) out.push_back(poly_from_json(p));
  return out;
}

PolyMatrix polymatrix_from_json(const json& j) {
  const auto r = field(j, "rows").get<std::size_t>(), c = field(j, "cols").get<std::size_t>();
  const int n = field(j, "n").get<int>();
  const json& e = field(j, "entries");
  require(e.is_array() && e.size() == r, Errc::ParseError, "entries: wrong row count");
  PolyMatrix M(r, c, n);
  for (std::size_t i = 0; i < r; ++i) {
    require(e[i].size() == c, Errc::ParseError, "entries: wrong column count in row " + std::to_string(i));
    for (std::size_t k = 0; k < c; ++k) M(i, k) = poly_from_json(e[i][k]);
  }
  return M;
}

QMatrix qmatrix_from_json(const json& j) {
  require(j.is_array(), Errc::ParseError, "matrix must be an array of rows");
  const std::size_t r = j.size(), c = r ? j[0].size() : 0;
  QMatrix M(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    require(j[i].size() == c, Errc::ParseError, "ragged matrix");
    for (std::size_t k = 0; k < c; ++k) M(i, k) = rational_from_json(j[i][k]);
  }
  return M;
}

Operator operator_from_json(const json& j) {
  const int n = field(j, "n").get<int>();
  const auto d = field(j, "dim_domain").get<std::size_t>();
  const auto l = field(j, "dim_codomain").get<std::size_t>();
  std::map<Monomial, QMatrix> terms;
  for (const auto& t : field(j, "terms")) {
    auto e = field(t, "alpha").get<std::vector<int>>();
    require(static_cast<int>(e.size()) == n, Errc::ParseError, "alpha length differs from n");
    QMatrix A = qmatrix_from_json(field(t, "matrix"));
    require(A.rows() == l && A.cols() == d, Errc::ParseError, "term matrix is not dim_codomain x dim_domain");
    Monomial m = Monomial::from(e);
    auto it = terms.find(m);
    if (it == terms.end()) terms.emplace(m, A);
    else it->second = it->second + A;
  }
  Operator op = make_operator(n, d, l, std::move(terms), j.value("name", std::string()));
  if (j.contains("row_orders")) {
    auto ro = j.at("row_orders").get<std::vector<int>>();
    require(ro.size() == l, Errc::ParseError, "row_orders has the wrong length");
    for (std::size_t r = 0; r < l; ++r) {
      bool zero = true;
      for (const auto& [a, A] : op.terms)
        for (std::size_t i = 0; i < d; ++i) zero = zero && A(r, i) == 0;
      require(zero || ro[r] == op.row_orders[r], Errc::ParseError, "row_orders disagree with the terms");
    }
    op.row_orders = ro;
  }
  return op;
}

PolyMatrix system_from_json(const json& j) {
  if (j.contains("dim_domain")) return system_from_symbol(symbol(operator_from_json(j)));
  return polymatrix_from_json(j);
}

json to_json(const Certificate& c, const PolyMatrix& P, const std::vector<CPoly>& b) {
  json h = json::array(), prov = json::array(), bj = json::array();
  for (const auto& p : c.h) h.push_back(to_json(p));
  for (const auto& p : b) bj.push_back(to_json(p));
  for (const auto& t : c.provenance) {
    json dg = json::array();
    for (const auto& p : t.det_gamma) dg.push_back(to_json(p));
    prov.push_back(json{{"I", t.I}, {"J", t.J}, {"g", to_json(t.g)}, {"det", to_json(t.det)}, {"det_gamma", dg}});
  }
  return json{{"route", route_name(c.route)},
              {"r", c.r},
              {"q", to_json(c.q)},
              {"m", c.m},
              {"h", h},
              {"claims_checked", c.claims_checked},
              {"P", to_json(P)},
              {"b", bj},
              {"provenance", prov}};
}

CertificateFile certificate_from_json(const json& j) {
  CertificateFile f;
  f.P = polymatrix_from_json(field(j, "P"));
  f.b = polys_from_json(field(j, "b"));
  Certificate& c = f.cert;
  const std::string route = field(j, "route").get<std::string>();
  c.route = route == route_name(Route::Auto) ? Route::Auto : route == route_name(Route::Direct) ? Route::Direct : Route::Nullstellensatz;
  c.r = field(j, "r").get<std::size_t>();
  c.q = poly_from_json(field(j, "q"));
  c.m = field(j, "m").get<int>();
  c.h = polys_from_json(field(j, "h"));
  c.claims_checked = j.value("claims_checked", std::size_t(0));
  if (j.contains("provenance"))
    for (const auto& t : j.at("provenance")) {
      MinorTerm mt;
      mt.I = field(t, "I").get<IndexSet>();
      mt.J = field(t, "J").get<IndexSet>();
      mt.g = poly_from_json(field(t, "g"));
      mt.det = poly_from_json(field(t, "det"));
      mt.det_gamma = polys_from_json(field(t, "det_gamma"));
      c.provenance.push_back(std::move(mt));
    }
  return f;
}

json to_json(const RankReport& r) {
  json j{{"generic_rank", r.generic_rank},
         {"kernel_dim", r.kernel_dim},
         {"constant_rank_C", verdict_name(r.constant_over_C)},
         {"c_elliptic", r.c_elliptic}};
  j["witness"] = r.witness ? to_json(*r.witness) : json(nullptr);
  if (r.witness) j["witness_rank"] = r.witness_rank;
  j["exponents"] = r.exponents;
  j["sampled_real_constant"] = r.sampled_real_constant;
  j["real_samples"] = r.real_samples;
  j["cap"] = r.cap;
  j["minors_used"] = r.minors_used;
  j["lazy_minors"] = r.lazy_minors;
  j["reason"] = r.reason;
  return j;
}

json to_json(const FactorizationResult& f) {
  json certs = json::array();
  for (std::size_t m = 0; m < f.certificates.size(); ++m)
    for (std::size_t a = 0; a < f.certificates[m].size(); ++a) {
      const Certificate& c = f.certificates[m][a];
      certs.push_back(json{{"row", m}, {"variable", a}, {"m", c.m}, {"route", route_name(c.route)}, {"q", to_json(c.q)}});
    }
  json j{{"k_tilde", f.k_tilde}, {"N", f.N}, {"B", to_json(f.B_op)}, {"certificates", certs}, {"rank_a1", to_json(f.rank_a1)}};
  if (f.rank_a2) j["rank_a2"] = to_json(*f.rank_a2);
  return j;
}

json to_json(const KernelEqualityResult& k) {
  json j{{"verdict", kernel_verdict_name(k.verdict)}, {"method", k.method}};
  if (k.verdict == KernelVerdict::NotEqual) {
    j["xi"] = to_json(k.xi);
    j["v"] = to_json(k.v);
    j["annihilated_by"] = k.annihilated_by;
  }
  j["reason"] = k.reason;
  return j;
}

json to_json(const WitnessFamily& w) {
  return json{{"xi", to_json(w.xi)}, {"v", to_json(w.v)}, {"annihilated_by", w.annihilated_by}, {"description", w.description}};
}

namespace {

json vec(const Eigen::VectorXd& v) {
  json a = json::array();
  for (long i = 0; i < v.size(); ++i) a.push_back(round12(v(i)));
  return a;
}

json poly2(const VecPoly2& p) {
  json a = json::array();
  for (const auto& [e, v] : p.c) a.push_back(json{{"exp", {e.first, e.second}}, {"coeff", vec(v)}});
  return a;
}

}  // namespace

json to_json(const PotentialSolution& s) {
  const Diagnostics& g = s.diag;
  json diag{{"c1_plus_c2", round12(g.c_sum)},
            {"s1_freeness", round12(g.s1_freeness)},
            {"s1_involution", round12(g.s1_involution)},
            {"s2_corner", round12(g.s2_corner)},
            {"s2_kernel", round12(g.s2_kernel)},
            {"s2_derivative", round12(g.s2_derivative)},
            {"annihilation_residual", round12(g.annihilation_residual)},
            {"h_minus2_proxy", round12(g.h_minus2_proxy)},
            {"identity_residual", round12(g.identity_residual)},
            {"kernel_orthogonality", round12(g.kernel_orthogonality)},
            {"poly_identity", round12(g.poly_identity)},
            {"v0_deviation", round12(g.v0_deviation)},
            {"interior_reconstruction_error", round12(g.reconstruction_error)},
            {"constant_rank", g.constant_rank},
            {"quadrature_nodes", g.quadrature_nodes}};
  if (g.truth_error >= 0) diag["truth_error"] = round12(g.truth_error);
  json X = json::array();
  for (const auto& b : s.X.basis) {
    json p = json::array();
    for (const auto& c : b) p.push_back(to_json(c));
    X.push_back(p);
  }
  json dec{{"V0", to_json(s.dec.V0)}, {"V1", to_json(s.dec.V1)}, {"V2", to_json(s.dec.V2)}, {"spanning", s.dec.spanning}};
  return json{{"N", s.N},
              {"dim_potential", s.m},
              {"dim_field", s.d},
              {"decomposition", dec},
              {"S1", {{"a11", vec(s.s1.a11)}, {"a12", vec(s.s1.a12)}, {"a22", vec(s.s1.a22)}}},
              {"P1", {{"u0", vec(s.u0)}, {"p1", vec(s.p1)}, {"p2", vec(s.p2)}}},
              {"P3", poly2(s.poly.P3)},
              {"P4", poly2(s.poly.P4)},
              {"a_prime", vec(s.poly.a_prime)},
              {"X_constant", vec(s.x_constant)},
              {"X_basis", X},
              {"X_degree_bound", s.X.degree_bound},
              {"diagnostics", diag}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  require(bool(in), Errc::ParseError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(Errc::ParseError, path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  require(bool(out), Errc::ParseError, "cannot write " + path);
  out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    out.push_back(cell);
  }
  return out;
}

double number(const std::string& s, const std::string& where) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos == s.size()) return v;
  } catch (const std::exception&) {
  }
  fail(Errc::ParseError, where + ": not a number: \"" + s + "\"");
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", round12(x));
  return buf;
}

}  // namespace

GridInput read_grid_csv(const std::string& path) {
  std::ifstream in(path);
  require(bool(in), Errc::ParseError, "cannot open " + path);
  std::string line;
  require(bool(std::getline(in, line)), Errc::ParseError, path + ": empty file");
  auto head = split(line);
  require(head.size() >= 3 && head[0] == "x1" && head[1] == "x2", Errc::ParseError, path + ": header must start x1,x2");
  const std::size_t d = head.size() - 2;
  std::vector<std::vector<double>> rows;
  std::size_t ln = 1;
  while (std::getline(in, line)) {
    ++ln;
    if (line.empty()) continue;
    auto cells = split(line);
    require(cells.size() == head.size(), Errc::ParseError, path + ":" + std::to_string(ln) + ": wrong column count");
    std::vector<double> r;
    for (const auto& c : cells) r.push_back(number(c, path + ":" + std::to_string(ln)));
    rows.push_back(std::move(r));
  }
  const long side = std::lround(std::sqrt(double(rows.size())));
  require(side >= 2 && std::size_t(side * side) == rows.size(), Errc::BadSize, path + ": node count is not a square");
  GridInput g;
  g.M = static_cast<int>(side - 1);
  g.values.assign(d, Eigen::MatrixXd(side, side));
  for (long a = 0; a < side; ++a)
    for (long b = 0; b < side; ++b) {
      const auto& r = rows[a * side + b];
      require(std::abs(r[0] - double(a) / g.M) < 1e-9 && std::abs(r[1] - double(b) / g.M) < 1e-9, Errc::ParseError,
              path + ": nodes must be (j1/M, j2/M) with j2 fastest");
      for (std::size_t c = 0; c < d; ++c) g.values[c](a, b) = r[2 + c];
    }
  return g;
}

std::string grid_csv(const std::vector<Eigen::MatrixXd>& comps, int denominator) {
  std::string s = "x1,x2";
  for (std::size_t c = 0; c < comps.size(); ++c) s += ",comp_" + std::to_string(c + 1);
  s += "\n";
  if (comps.empty()) return s;
  for (long a = 0; a < comps[0].rows(); ++a)
    for (long b = 0; b < comps[0].cols(); ++b) {
      s += fmt(double(a) / denominator) + "," + fmt(double(b) / denominator);
      for (const auto& M : comps) s += "," + fmt(M(a, b));
      s += "\n";
    }
  return s;
}

EdgeTraces read_traces_csv(const std::string& path) {
  std::ifstream in(path);
  require(bool(in), Errc::ParseError, "cannot open " + path);
  std::string line;
  require(bool(std::getline(in, line)), Errc::ParseError, path + ": empty file");
  auto head = split(line);
  require(head.size() >= 3 && head[0] == "edge" && head[1] == "s", Errc::ParseError, path + ": header must start edge,s");
  const std::size_t d = head.size() - 2;
  std::map<std::string, std::vector<std::vector<double>>> by_edge;
  std::size_t ln = 1;
  while (std::getline(in, line)) {
    ++ln;
    if (line.empty()) continue;
    auto cells = split(line);
    require(cells.size() == head.size(), Errc::ParseError, path + ":" + std::to_string(ln) + ": wrong column count");
    require(cells[0] == "left" || cells[0] == "right" || cells[0] == "bottom" || cells[0] == "top", Errc::ParseError,
            path + ":" + std::to_string(ln) + ": unknown edge \"" + cells[0] + "\"");
    std::vector<double> r;
    for (std::size_t i = 1; i < cells.size(); ++i) r.push_back(number(cells[i], path + ":" + std::to_string(ln)));
    by_edge[cells[0]].push_back(std::move(r));
  }
  const std::size_t cnt = by_edge["left"].size();
  require(cnt >= 2, Errc::BadSize, path + ": too few samples");
  EdgeTraces t;
  t.rule = trapezoid_rule(static_cast<int>(cnt - 1));
  auto fill = [&](const std::string& name, Eigen::MatrixXd& M) {
    const auto& rows = by_edge[name];
    require(rows.size() == cnt, Errc::BadSize, path + ": edge " + name + " has a different sample count");
    M.resize(d, cnt);
    for (std::size_t q = 0; q < cnt; ++q) {
      require(std::abs(rows[q][0] - t.rule.nodes[q]) < 1e-9, Errc::ParseError, path + ": edge " + name + " nodes are not uniform");
      for (std::size_t c = 0; c < d; ++c) M(c, q) = rows[q][1 + c];
    }
  };
  fill("left", t.left);
  fill("right", t.right);
  fill("bottom", t.bottom);
  fill("top", t.top);
  return t;
}

std::string traces_csv(const EdgeTraces& t) {
  std::string s = "edge,s";
  for (long c = 0; c < t.left.rows(); ++c) s += ",comp_" + std::to_string(c + 1);
  s += "\n";
  const std::pair<const char*, const Eigen::MatrixXd*> edges[] = {
      {"left", &t.left}, {"right", &t.right}, {"bottom", &t.bottom}, {"top", &t.top}};
  for (const auto& [name, M] : edges)
    for (long q = 0; q < M->cols(); ++q) {
      s += std::string(name) + "," + fmt(t.rule.nodes[q]);
      for (long c = 0; c < M->rows(); ++c) s += "," + fmt((*M)(c, q));
      s += "\n";
    }
  return s;
}

}  // namespace ccrank
