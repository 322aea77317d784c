#include "cli.hpp"

#include <iostream>

#include <CLI11.hpp>

#include "ccrank/crank.hpp"
#include "ccrank/error.hpp"
#include "ccrank/factor.hpp"
#include "ccrank/io.hpp"
#include "ccrank/nullsatz.hpp"
#include "ccrank/opcore.hpp"
#include "ccrank/poincare2d.hpp"

namespace ccrank::cli {

namespace {

void emit(const std::string& path, const json& j) {
  if (path.empty()) std::cout << dump(j);
  else write_text_file(path, dump(j));
}

Operator load_op(const std::string& path, const char* flag) {
  require(!path.empty(), Errc::ParseError, std::string("missing --") + flag);
  return operator_from_json(read_json_file(path));
}

RankOptions rank_options(const RunConfig& c) {
  RankOptions o;
  o.cap = c.cap;
  o.seed = c.seed;
  return o;
}

int crank_cmd(const RunConfig& c) {
  Operator op = load_op(c.op, "op");
  RankReport r = is_constant_rank_C(symbol(op), rank_options(c));
  json j = to_json(r);
  if (c.command == "ellipticity") j = json{{"c_elliptic", r.c_elliptic}, {"report", j}};
  emit(c.report.empty() ? c.out : c.report, j);
  return r.constant_over_C == Verdict::Undetermined ? 2 : 0;
}

Route parse_route(const std::string& s) {
  if (s == "nullstellensatz") return Route::Nullstellensatz;
  if (s == "auto") return Route::Auto;
  if (s == "direct") return Route::Direct;
  fail(Errc::ParseError, "--route must be nullstellensatz, auto or direct");
}

int nullsatz_cmd(const RunConfig& c) {
  if (c.command == "verify") {
    require(!c.cert.empty(), Errc::ParseError, "missing --cert");
    CertificateFile f = certificate_from_json(read_json_file(c.cert));
    VerifyResult v = verify_certificate(f.P, f.b, f.cert);
    json j{{"ok", v.ok}, {"message", v.message}};
    if (!v.ok) j["failing_i"] = v.failing_i, j["difference"] = to_json(v.difference);
    emit(c.out, j);
    return v.ok ? 0 : 1;
  }
  require(!c.p.empty() && !c.b.empty() && !c.q.empty(), Errc::ParseError, "certify needs --p, --b and --q");
  PolyMatrix P = system_from_json(read_json_file(c.p));
  std::vector<CPoly> b = polys_from_json(read_json_file(c.b));
  CPoly q = poly_from_json(read_json_file(c.q));
  CertifyOptions o;
  o.cap = c.cap;
  o.seed = c.seed;
  o.route = parse_route(c.route);
  try {
    Certificate cert = certify_row(P, b, q, o);
    emit(c.out, to_json(cert, P, b));
    return 0;
  } catch (const CapError& e) {
    emit(c.out, json{{"verdict", "Undetermined"}, {"reason", e.what()}, {"variable", e.variable()}, {"cap", e.cap()}});
    return 2;
  }
}

int factor_cmd(const RunConfig& c) {
  if (c.command == "through") {
    Operator A1 = load_op(c.a1, "a1"), A2 = load_op(c.a2, "a2");
    FactorOptions o;
    o.cap = c.cap;
    o.seed = c.seed;
    o.strict = c.strict;
    try {
      emit(c.out, to_json(factor_through(A1, A2, o)));
      return 0;
    } catch (const CapError& e) {
      emit(c.out, json{{"verdict", "Undetermined"}, {"reason", e.what()}});
      return 2;
    }
  }
  Operator B = load_op(c.b, "b"), Bt = load_op(c.bt, "bt");
  KernelEqualityResult r = symbol_kernel_equal(B, Bt, c.cap, c.seed);
  json j = to_json(r);
  if (r.verdict == KernelVerdict::NotEqual) j["plane_wave"] = to_json(plane_wave_witness(B, Bt, r));
  emit(c.out, j);
  return r.verdict == KernelVerdict::Undetermined ? 2 : 0;
}

int poincare_cmd(const RunConfig& c) {
  Operator A = load_op(c.a, "a"), B = load_op(c.b, "b");
  require(!c.u.empty(), Errc::ParseError, "missing --u");
  GridInput g = read_grid_csv(c.u);
  if (!c.traces.empty()) {
    EdgeTraces t = read_traces_csv(c.traces);
    require(static_cast<int>(t.rule.size()) == g.M + 1, Errc::BadSize, "traces must use the grid resolution");
    g.traces = t;
  }
  SolveOptions o;
  o.N = c.grid;
  o.seed = c.seed;
  o.tol = c.tol;
  PotentialSolution s = solve(A, B, g, o);
  if (!c.out.empty()) write_text_file(c.out, grid_csv(s.v, s.N));
  emit(c.report, to_json(s));
  return 0;
}

int opzoo_cmd(const RunConfig& c) {
  if (c.command == "list") {
    emit(c.out, json(builtin_names()));
    return 0;
  }
  require(!c.name.empty(), Errc::ParseError, "missing --name");
  BuiltinParams p;
  p.n = c.n;
  p.N = c.N;
  p.k = c.k;
  p.full = c.full;
  emit(c.out, to_json(builtin(c.name, p)));
  return 0;
}

}  // namespace

int run(const RunConfig& c) {
  try {
    if (c.group == "crank") return crank_cmd(c);
    if (c.group == "nullsatz") return nullsatz_cmd(c);
    if (c.group == "factor") return factor_cmd(c);
    if (c.group == "poincare") return poincare_cmd(c);
    if (c.group == "opzoo") return opzoo_cmd(c);
    fail(Errc::UnknownName, "unknown command group \"" + c.group + "\"");
  } catch (const InclusionError& e) {
    std::cerr << dump(json{{"error", "InclusionViolated"}, {"message", e.what()}, {"xi", e.xi()}, {"v", e.v()}});
  } catch (const Error& e) {
    std::cerr << dump(json{{"error", errc_name(e.code())}, {"message", e.what()}});
  } catch (const std::exception& e) {
    std::cerr << dump(json{{"error", "Failure"}, {"message", e.what()}});
  }
  return 1;
}

int main(int argc, char** argv) {
  RunConfig c;
  CLI::App app{"constant-rank operator toolkit"};
  app.require_subcommand(1);
  app.add_option("--seed", c.seed, "random seed");
  app.add_option("--cap", c.cap, "power-membership cap");
  app.add_option("--tol", c.tol, "float tolerance");

  auto group = [&](const char* name, const char* help) {
    auto* g = app.add_subcommand(name, help);
    g->require_subcommand(1);
    return g;
  };
  auto cmd = [&](CLI::App* g, const char* name, const char* help) {
    auto* s = g->add_subcommand(name, help);
    s->callback([&c, g, name] {
      c.group = g->get_name();
      c.command = name;
    });
    return s;
  };

  auto* crank = group("crank", "rank analysis of symbols");
  for (const char* name : {"check", "ellipticity"}) {
    auto* s = cmd(crank, name, "constant rank over C");
    s->add_option("--op", c.op, "operator JSON")->required();
    s->add_option("--report,--out", c.report, "report path");
  }

  auto* ns = group("nullsatz", "Nullstellensatz certificates");
  auto* cert = cmd(ns, "certify", "certify a kernel inclusion");
  cert->add_option("--p", c.p, "system or operator JSON")->required();
  cert->add_option("--b", c.b, "polynomial list JSON")->required();
  cert->add_option("--q", c.q, "polynomial JSON")->required();
  cert->add_option("--route", c.route, "nullstellensatz | auto | direct");
  cert->add_option("--out", c.out, "certificate path");
  auto* ver = cmd(ns, "verify", "verify a certificate");
  ver->add_option("--cert", c.cert, "certificate JSON")->required();
  ver->add_option("--out", c.out, "result path");

  auto* fa = group("factor", "factorization and kernel equality");
  auto* th = cmd(fa, "through", "nabla^k A2 = B A1");
  th->add_option("--a1", c.a1)->required();
  th->add_option("--a2", c.a2)->required();
  th->add_flag("--strict", c.strict, "require constant rank of A2 as well");
  th->add_option("--out", c.out);
  auto* ke = cmd(fa, "kernel-eq", "symbol kernel equality");
  ke->add_option("--b", c.b)->required();
  ke->add_option("--bt", c.bt)->required();
  ke->add_option("--out", c.out);

  auto* po = group("poincare", "two-dimensional potentials");
  auto* so = cmd(po, "solve", "solve A v = u");
  so->add_option("--a", c.a)->required();
  so->add_option("--b", c.b)->required();
  so->add_option("--u", c.u)->required();
  so->add_option("--traces", c.traces);
  so->add_option("--n", c.grid);
  so->add_option("--out", c.out, "potential grid CSV");
  so->add_option("--report", c.report, "report JSON");

  auto* zoo = group("opzoo", "built-in operators");
  auto* ls = cmd(zoo, "list", "names");
  ls->add_option("--out", c.out);
  auto* em = cmd(zoo, "emit", "operator JSON");
  em->add_option("--name", c.name)->required();
  em->add_option("--n", c.n);
  em->add_option("--N", c.N, "component count");
  em->add_option("--k", c.k, "kgradient order");
  em->add_flag("--full", c.full, "curlcurl with all index rows");
  em->add_option("--out", c.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  return run(c);
}

}  // namespace ccrank::cli
