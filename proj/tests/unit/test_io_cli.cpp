#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ccrank/error.hpp"
#include "ccrank/io.hpp"
#include "cli.hpp"
#include "helpers.hpp"

using namespace ccrank;
using th::gi;
using th::x;

namespace {

std::string tmp(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "ccrank_unit";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

cli::RunConfig cfg(const std::string& group, const std::string& command) {
  cli::RunConfig c;
  c.group = group;
  c.command = command;
  return c;
}

}  // namespace

TEST_CASE("operator JSON round trip for the zoo") {
  for (const auto& name : builtin_names()) {
    Operator op = builtin(name, {});
    Operator back = operator_from_json(json::parse(dump(to_json(op))));
    CHECK(symbol(back) == symbol(op));
    CHECK(back.row_orders == op.row_orders);
  }
}

TEST_CASE("curl JSON golden") {
  json j = to_json(builtin("curl", {}));
  CHECK(j["terms"].dump() == R"([{"alpha":[1,0],"matrix":[["0","1"]]},{"alpha":[0,1],"matrix":[["-1","0"]]}])");
  Operator neg = operator_from_json(json::parse(
      R"({"n":2,"dim_domain":2,"dim_codomain":1,"terms":[{"alpha":[1,0],"matrix":[["0","-1"]]},{"alpha":[0,1],"matrix":[["1","0"]]}]})"));
  CHECK(symbol(neg)(0, 0) == x(1));
}

TEST_CASE("polynomial and number JSON") {
  CPoly p = x(0) * x(0) + CPoly::constant(2, gi(0, 1)) * x(1);
  CHECK(poly_from_json(to_json(p)) == p);
  CHECK(to_json(gi(3)).dump() == R"("3")");
  CHECK(to_json(GaussRational(Rational(1, 2), Rational(-1))).dump() == R"({"re":"1/2","im":"-1"})");
  CHECK_THROWS_AS(poly_from_json(json::parse(R"({"n":2,"terms":[{"exp":[1],"coeff":"1"}]})")), Error);
  CHECK_THROWS_AS(operator_from_json(json::parse(R"({"n":2})")), Error);
}

TEST_CASE("certificate JSON round trip") {
  PolyMatrix P(2, 1, 2);
  P(0, 0) = x(0), P(1, 0) = x(1);
  std::vector<CPoly> b = {x(0) * x(0), x(0) * x(1)};
  Certificate c = certify_row(P, b, x(1));
  CertificateFile f = certificate_from_json(json::parse(dump(to_json(c, P, b))));
  CHECK(f.cert.m == c.m);
  CHECK(verify_certificate(f.P, f.b, f.cert).ok);
}

TEST_CASE("CSV round trips") {
  std::vector<Eigen::MatrixXd> comps(2, Eigen::MatrixXd(5, 5));
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b) comps[0](a, b) = a + 0.5 * b, comps[1](a, b) = a * b;
  write_text_file(tmp("g.csv"), grid_csv(comps, 4));
  GridInput g = read_grid_csv(tmp("g.csv"));
  CHECK(g.M == 4);
  CHECK(g.values[0] == comps[0]);
  CHECK(g.values[1] == comps[1]);
  EdgeTraces t{trapezoid_rule(4), comps[0].topRows(2), comps[1].topRows(2), comps[0].bottomRows(2), comps[1].bottomRows(2)};
  write_text_file(tmp("t.csv"), traces_csv(t));
  EdgeTraces back = read_traces_csv(tmp("t.csv"));
  CHECK(back.left == t.left);
  CHECK(back.top == t.top);
  write_text_file(tmp("bad.csv"), "x1,x2,comp_1\n0,0,1\n0,1,zz\n");
  CHECK_THROWS_AS(read_grid_csv(tmp("bad.csv")), Error);
}

TEST_CASE("CLI commands") {
  auto emit = cfg("opzoo", "emit");
  emit.name = "laplacian";
  emit.out = tmp("lap.json");
  CHECK(cli::run(emit) == 0);
  emit.name = "bilaplacian";
  emit.out = tmp("bilap.json");
  CHECK(cli::run(emit) == 0);

  auto check = cfg("crank", "check");
  check.op = tmp("lap.json");
  check.report = tmp("rank.json");
  CHECK(cli::run(check) == 0);
  json r = read_json_file(tmp("rank.json"));
  CHECK(r["constant_rank_C"] == "No");
  CHECK(r["witness"].dump() == R"(["1",{"re":"0","im":"1"}])");

  auto keq = cfg("factor", "kernel-eq");
  keq.b = tmp("lap.json");
  keq.bt = tmp("bilap.json");
  keq.out = tmp("keq.json");
  CHECK(cli::run(keq) == 0);
  CHECK(read_json_file(tmp("keq.json"))["verdict"] == "Equal");

  CHECK(cli::run(cfg("nosuch", "x")) == 1);
  auto missing = cfg("crank", "check");
  missing.op = tmp("does_not_exist.json");
  CHECK(cli::run(missing) == 1);
}

TEST_CASE("CLI certificate verify and undetermined exit") {
  write_text_file(tmp("P.json"), dump(to_json(builtin("div", {}))));
  write_text_file(tmp("b.json"), dump(json::array({to_json(x(0) * x(0)), to_json(x(0) * x(1))})));
  write_text_file(tmp("q.json"), dump(to_json(x(1))));
  auto cert = cfg("nullsatz", "certify");
  cert.p = tmp("P.json"), cert.b = tmp("b.json"), cert.q = tmp("q.json"), cert.out = tmp("cert.json");
  CHECK(cli::run(cert) == 0);
  auto ver = cfg("nullsatz", "verify");
  ver.cert = tmp("cert.json");
  ver.out = tmp("ver.json");
  CHECK(cli::run(ver) == 0);
  json c = read_json_file(tmp("cert.json"));
  c["m"] = 0;
  write_text_file(tmp("bad_cert.json"), dump(c));
  ver.cert = tmp("bad_cert.json");
  CHECK(cli::run(ver) == 1);
  cert.cap = 0;
  cert.out = tmp("cap.json");
  CHECK(cli::run(cert) == 2);
}

TEST_CASE("CLI Poincare solve from CSV") {
  const int M = 128;
  std::vector<Eigen::MatrixXd> u(2, Eigen::MatrixXd(M + 1, M + 1));
  for (int a = 0; a <= M; ++a)
    for (int b = 0; b <= M; ++b) {
      const double x1 = double(a) / M, x2 = double(b) / M;
      u[0](a, b) = -(x1 * std::cos(x1 * x2) + 2 * x2);
      u[1](a, b) = x2 * std::cos(x1 * x2);
    }
  write_text_file(tmp("u.csv"), grid_csv(u, M));
  auto emit = cfg("opzoo", "emit");
  emit.name = "perpgrad", emit.out = tmp("A.json");
  CHECK(cli::run(emit) == 0);
  emit.name = "div", emit.out = tmp("B.json");
  CHECK(cli::run(emit) == 0);
  auto s = cfg("poincare", "solve");
  s.a = tmp("A.json"), s.b = tmp("B.json"), s.u = tmp("u.csv"), s.grid = 32;
  s.out = tmp("v.csv"), s.report = tmp("report.json");
  CHECK(cli::run(s) == 0);
  json rep = read_json_file(tmp("report.json"));
  CHECK(rep["diagnostics"]["interior_reconstruction_error"].get<double>() < 5e-2);
  std::string first = slurp(tmp("report.json"));
  CHECK(cli::run(s) == 0);
  CHECK(slurp(tmp("report.json")) == first);
  std::istringstream v(slurp(tmp("v.csv")));
  std::string line;
  std::getline(v, line);
  CHECK(line == "x1,x2,comp_1");
  int rows = 0;
  while (std::getline(v, line)) ++rows;
  CHECK(rows == 32 * 32);
}
