#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "ccrank/crank.hpp"
#include "ccrank/error.hpp"
#include "ccrank/factor.hpp"
#include "ccrank/io.hpp"
#include "ccrank/nullsatz.hpp"
#include "ccrank/opcore.hpp"
#include "ccrank/poincare2d.hpp"
#include "ccrank/rng.hpp"
#include "ccrank/witness.hpp"

using namespace ccrank;

namespace {

struct Check {
  bool ok = true;
  std::string detail;
  void expect(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

GaussRational gi(long re, long im = 0) { return GaussRational(Rational(re), Rational(im)); }
CPoly xi(int a) { return CPoly::variable(2, a); }

RankReport rank_of(const std::string& name, int n, int N = 1) {
  BuiltinParams p;
  p.n = n;
  p.N = N;
  return is_constant_rank_C(symbol(builtin(name, p)));
}

Check zoo_ranks() {
  Check c;
  for (int n : {2, 3}) {
    RankReport r = rank_of("div", n);
    c.expect(r.constant_over_C == Verdict::Yes && r.kernel_dim == std::size_t(n - 1), "div n=" + std::to_string(n));
  }
  for (int N = 1; N <= 3; ++N) {
    RankReport r = rank_of("curl", 2, N);
    c.expect(r.constant_over_C == Verdict::Yes && r.kernel_dim == std::size_t(N), "curl N=" + std::to_string(N));
  }
  for (int n : {2, 3}) {
    RankReport r = rank_of("curlcurl", n);
    c.expect(r.constant_over_C == Verdict::Yes && r.kernel_dim == std::size_t(n), "curlcurl n=" + std::to_string(n));
  }
  c.expect(rank_of("symgrad", 2).c_elliptic, "symgrad n=2 not C-elliptic");
  c.expect(rank_of("devsymgrad", 3).c_elliptic, "devsymgrad n=3 not C-elliptic");
  Operator lap = builtin("laplacian", {});
  RankReport r = is_constant_rank_C(symbol(lap));
  c.expect(r.constant_over_C == Verdict::No && r.witness.has_value(), "laplacian not No");
  if (r.witness) {
    const Point& w = *r.witness;
    bool on_line = !w[0].is_zero() && (w[1] == w[0] * gi(0, 1) || w[1] == w[0] * gi(0, -1));
    c.expect(on_line, "laplacian witness off the line lambda(1, +-i)");
    c.expect(rank_at(symbol(lap), w) < r.generic_rank, "laplacian witness does not drop rank");
  }
  return c;
}

PolyMatrix column(std::vector<CPoly> entries) {
  PolyMatrix P(entries.size(), 1, 2);
  for (std::size_t i = 0; i < entries.size(); ++i) P(i, 0) = entries[i];
  return P;
}

Check certificates() {
  Check c;
  PolyMatrix Pdiv = column({xi(0), xi(1)});
  std::vector<CPoly> bdiv = {xi(0) * xi(0), xi(0) * xi(1)};
  PolyMatrix Pcurl = column({CPoly(2) - xi(1), xi(0)});
  std::vector<CPoly> bcurl = {xi(0) * (CPoly(2) - xi(1)), xi(0) * xi(0)};
  struct Fixture {
    PolyMatrix P;
    std::vector<CPoly> b;
  };
  for (const Fixture& f : {Fixture{Pdiv, bdiv}, Fixture{Pcurl, bcurl}})
    for (Route route : {Route::Nullstellensatz, Route::Auto}) {
      CertifyOptions o;
      o.route = route;
      Certificate cert = certify_row(f.P, f.b, xi(1), o);
      c.expect(verify_certificate(f.P, f.b, cert).ok, "certificate fails to verify");
      if (route == Route::Nullstellensatz) c.expect(cert.claims_checked > 0, "no claims checked");
      for (const auto& t : cert.provenance)
        for (std::size_t i = 0; i < f.P.rows(); ++i)
          c.expect(claim_holds(f.P, f.b, t.I, t.J, i), "claim fails");
    }
  Certificate d = certify_row(Pdiv, bdiv, xi(1));
  c.expect(d.m == 1 && d.h.size() == 1 && d.h[0] == xi(0) * xi(1), "div certificate is not m=1, h=xi1 xi2");
  CertifyOptions ao;
  ao.route = Route::Auto;
  Certificate k = certify_row(Pcurl, bcurl, xi(1), ao);
  c.expect(k.m == 0 && k.h[0] == xi(0), "curl certificate is not m=0, h=xi1");

  Rng rng(kDefaultSeed);
  int checks = 0;
  for (int t = 0; checks < 100 && t < 1000; ++t) {
    const Fixture& f = t % 2 ? Fixture{Pcurl, bcurl} : Fixture{Pdiv, bdiv};
    Point p = {gi(rng.uniform_int(-50, 50), rng.uniform_int(-50, 50)), gi(rng.uniform_int(-50, 50), rng.uniform_int(-50, 50))};
    if (xi(1).evaluate(p).is_zero()) continue;
    GMatrix Pt(f.P.cols(), f.P.rows());
    for (std::size_t i = 0; i < f.P.rows(); ++i)
      for (std::size_t j = 0; j < f.P.cols(); ++j) Pt(j, i) = f.P(i, j).evaluate(p);
    GMatrix K = kernel_matrix(Pt);
    for (std::size_t col = 0; col < K.cols(); ++col) {
      GaussRational s = gi(0);
      for (std::size_t i = 0; i < f.b.size(); ++i) s = s + f.b[i].evaluate(p) * K(i, col);
      c.expect(s.is_zero(), "point soundness fails");
    }
    ++checks;
  }
  c.expect(checks == 100, "too few soundness points");
  return c;
}

bool identity_exact(const Operator& A1, const Operator& A2, const FactorizationResult& f) {
  return symbol(nabla_compose(A2, f.k_tilde)) == symbol(f.B_op) * symbol(A1);
}

Check factorization() {
  Check c;
  Operator curl = builtin("curl", {}), grad = builtin("gradient", {}), lap = builtin("laplacian", {});
  Operator div = builtin("div", {}), bilap = builtin("bilaplacian", {});
  Operator ncurl = nabla_compose(curl, 1);
  c.expect(identity_exact(curl, ncurl, factor_through(curl, ncurl)), "curl / grad curl defect");
  FactorOptions ns;
  ns.strict = false;
  c.expect(identity_exact(grad, lap, factor_through(grad, lap, ns)), "grad / laplacian defect");
  try {
    factor_through(curl, div);
    c.expect(false, "curl / div did not fail");
  } catch (const InclusionError& e) {
    c.expect(e.xi() == std::vector<std::string>{"1", "0"} && e.v() == std::vector<std::string>{"1", "0"},
             "curl / div witness differs from (e1, (1,0))");
    Point x = {gi(1), gi(0)};
    GMatrix cv = symbol_at(curl, x), dv = symbol_at(div, x);
    c.expect(cv(0, 0).is_zero() && dv(0, 0) == gi(1), "curl / div witness does not verify");
  }
  try {
    factor_through(lap, bilap);
    c.expect(false, "strict laplacian / bilaplacian did not fail");
  } catch (const Error& e) {
    c.expect(e.code() == Errc::ConstantRankViolated, "strict laplacian / bilaplacian wrong error");
  }
  c.expect(symbol_kernel_equal(lap, bilap).verdict == KernelVerdict::Equal, "kernel-eq(laplacian, bilaplacian) not Equal");
  return c;
}

Check kernel_witness() {
  Check c;
  Operator curl = builtin("curl", {});
  Operator lcurl = compose(builtin("laplacian", {}), curl);
  KernelEqualityResult r = symbol_kernel_equal(curl, lcurl);
  c.expect(r.verdict == KernelVerdict::NotEqual, "curl vs laplacian curl not NotEqual");
  if (r.verdict != KernelVerdict::NotEqual) return c;
  GMatrix a = symbol_at(curl, r.xi), b = symbol_at(lcurl, r.xi);
  GMatrix v = GMatrix::column(r.v);
  c.expect((a * v).is_zero() != (b * v).is_zero(), "witness does not separate the kernels");
  c.expect(r.xi == Point{gi(1), gi(0, 1)} && r.v == std::vector<GaussRational>{gi(1), gi(0)},
           "witness is not xi = (1, i), v = (1, 0)");
  WitnessFamily w = plane_wave_witness(curl, lcurl, r);
  GMatrix ka = symbol_at(w.annihilated_by == 0 ? curl : lcurl, w.xi);
  GMatrix kb = symbol_at(w.annihilated_by == 0 ? lcurl : curl, w.xi);
  GMatrix wv = GMatrix::column(w.v);
  c.expect((ka * wv).is_zero() && !(kb * wv).is_zero(), "plane wave check fails");
  return c;
}

Check correctors() {
  Check c;
  Operator div = builtin("div", {});
  QuadRule rule = trapezoid_rule(1024);
  auto traces = [&](const std::function<Eigen::VectorXd(double, double)>& u) {
    const long Q = static_cast<long>(rule.size());
    EdgeTraces t{rule, Eigen::MatrixXd(2, Q), Eigen::MatrixXd(2, Q), Eigen::MatrixXd(2, Q), Eigen::MatrixXd(2, Q)};
    for (long q = 0; q < Q; ++q) {
      const double s = rule.nodes[q];
      t.left.col(q) = u(0, s), t.right.col(q) = u(1, s), t.bottom.col(q) = u(s, 0), t.top.col(q) = u(s, 1);
    }
    return t;
  };
  auto u = [](double x1, double x2) { return Eigen::Vector2d(x1, -x2).eval(); };
  BoundaryData bd = boundary_data(div, traces(u));
  c.expect((bd.c1 + bd.c2).cwiseAbs().maxCoeff() <= 1e-10, "c1 + c2");
  CorrectorS1 s1 = corrector_s1(div, bd);
  c.expect((s1.a12 - Eigen::Vector2d(0, 1)).norm() <= 1e-10, "a12");
  c.expect((s1.a11 - Eigen::Vector2d(-1, 0)).norm() <= 1e-10, "a11");
  c.expect(s1.a22.norm() <= 1e-10, "a22");
  VecPoly2 S;
  S.dim = 2;
  S.c[{2, 0}] = s1.a11, S.c[{1, 1}] = 2 * s1.a12, S.c[{0, 2}] = s1.a22;
  c.expect(apply_first_order(div, S).max_abs() <= 1e-10, "div S1u != 0");
  auto u1 = [&](double x1, double x2) { return (u(x1, x2) + s1.eval(x1, x2)).eval(); };
  CorrectorS2 s2 = corrector_s2(div, boundary_data(div, traces(u1)));
  double err = 0;
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const double x = rule.nodes[q];
    err = std::max(err, (s2.q2.values.col(q) - Eigen::Vector2d(-(x - x * x), 0)).cwiseAbs().maxCoeff());
    err = std::max(err, s2.q1.values.col(q).cwiseAbs().maxCoeff());
  }
  c.expect(err <= 1e-8, "S2 traces");
  c.expect(std::max(s2.corner01.cwiseAbs().maxCoeff(), s2.corner10.cwiseAbs().maxCoeff()) <= 1e-8, "S2 corners");
  return c;
}

Check poincare(std::string& note) {
  Check c;
  struct Scenario {
    const char* a;
    const char* b;
    Sampler u, truth;
  };
  Scenario sc[] = {
      {"gradient", "curl",
       [](double x1, double x2) {
         return Eigen::Vector2d(std::exp(x1) * std::sin(x2) + 3 * x1 * x1, std::exp(x1) * std::cos(x2)).eval();
       },
       [](double x1, double x2) { return Eigen::VectorXd::Constant(1, std::exp(x1) * std::sin(x2) + x1 * x1 * x1); }},
      {"perpgrad", "div",
       [](double x1, double x2) {
         return Eigen::Vector2d(-(x1 * std::cos(x1 * x2) + 2 * x2), x2 * std::cos(x1 * x2)).eval();
       },
       [](double x1, double x2) { return Eigen::VectorXd::Constant(1, std::sin(x1 * x2) + x2 * x2); }},
  };
  std::ostringstream os;
  for (const auto& s : sc) {
    Operator A = builtin(s.a, {}), B = builtin(s.b, {});
    double prev = 0;
    for (int N : {128, 256}) {
      SolveOptions o;
      o.N = N;
      o.truth = s.truth;
      PotentialSolution sol = solve(A, B, s.u, o);
      const Diagnostics& d = sol.diag;
      os << " " << s.a << "/" << s.b << "@" << N << ": rec=" << d.reconstruction_error << " truth=" << d.truth_error
         << " ann=" << d.annihilation_residual << " id=" << d.identity_residual << ";";
      if (N == 128) c.expect(d.reconstruction_error <= 5e-2, std::string(s.a) + " error at 128");
      else c.expect(d.reconstruction_error < prev, std::string(s.a) + " error not decreasing");
      c.expect(d.annihilation_residual <= 1e-6, std::string(s.a) + " annihilation residual");
      c.expect(d.identity_residual <= 1e-9, std::string(s.a) + " identity residual");
      prev = d.reconstruction_error;
    }
  }
  note = os.str();
  return c;
}

Check span_routes() {
  Check c;
  for (const auto& name : builtin_names())
    for (int n : {2, 3}) {
      if (name == "perpgrad" && n != 2) continue;
      BuiltinParams p;
      p.n = n;
      ImageSpanRoutes r = image_span_routes(builtin(name, p));
      c.expect(same_span(r.sampled, r.monomial), name + " n=" + std::to_string(n));
    }
  return c;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Check determinism(const std::string& cli) {
  Check c;
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "ccrank_acceptance";
  fs::create_directories(dir);
  auto sh = [&](const std::string& args) { return std::system((cli + " " + args + " > /dev/null 2>&1").c_str()); };
  const std::string d = dir.string() + "/";
  c.expect(sh("opzoo emit --name laplacian --n 2 --out " + d + "lap.json") == 0, "emit laplacian");
  c.expect(sh("opzoo emit --name bilaplacian --n 2 --out " + d + "bilap.json") == 0, "emit bilaplacian");
  c.expect(sh("opzoo emit --name div --n 2 --out " + d + "div.json") == 0, "emit div");
  write_text_file(d + "b.json", dump(json::array({to_json(xi(0) * xi(0)), to_json(xi(0) * xi(1))})));
  write_text_file(d + "q.json", dump(to_json(xi(1))));
  const std::vector<std::pair<std::string, std::string>> runs = {
      {"crank check --op " + d + "lap.json --report ", "rank"},
      {"factor kernel-eq --b " + d + "lap.json --bt " + d + "bilap.json --out ", "keq"},
      {"nullsatz certify --p " + d + "div.json --b " + d + "b.json --q " + d + "q.json --out ", "cert"},
  };
  for (const auto& [args, tag] : runs) {
    for (int k = 0; k < 2; ++k) sh("--seed 24301 " + args + d + tag + std::to_string(k) + ".json");
    std::string a = slurp(d + tag + "0.json"), b = slurp(d + tag + "1.json");
    c.expect(!a.empty() && a == b, tag + " reports differ");
  }
  c.expect(sh("nullsatz verify --cert " + d + "cert0.json") == 0, "certificate round trip");
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "ccrank";
  int failures = 0;
  auto report = [&](int id, const char* title, const std::function<Check()>& f) {
    auto t0 = std::chrono::steady_clock::now();
    Check c;
    try {
      c = f();
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %d %s (%.1fs)%s%s\n", c.ok ? "PASS" : "FAIL", id, title, secs, c.detail.empty() ? "" : ": ",
                c.detail.c_str());
    std::fflush(stdout);
    failures += !c.ok;
  };
  std::string note;
  report(1, "zoo rank facts", zoo_ranks);
  report(2, "Nullstellensatz certificates", certificates);
  report(3, "factorization", factorization);
  report(4, "kernel-equality witnesses", kernel_witness);
  report(5, "boundary correctors", correctors);
  report(6, "Poincare solver convergence", [&] { return poincare(note); });
  if (!note.empty()) std::printf("    %s\n", note.c_str());
  report(7, "image span routes", span_routes);
  report(8, "CLI determinism", [&] { return determinism(cli); });
  return failures ? 1 : 0;
}
