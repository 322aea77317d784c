#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ccrank/crank.hpp"
#include "ccrank/factor.hpp"
#include "ccrank/nullsatz.hpp"
#include "ccrank/opcore.hpp"
#include "ccrank/poincare2d.hpp"

namespace ccrank {

using json = nlohmann::ordered_json;

double round12(double x);

json to_json(const Rational& q);
json to_json(const GaussRational& z);
json to_json(const Point& p);
json to_json(const CPoly& p);
json to_json(const PolyMatrix& M);
json to_json(const QMatrix& M);
json to_json(const Operator& op);

Rational rational_from_json(const json& j);
GaussRational gauss_from_json(const json& j);
Point point_from_json(const json& j);
CPoly poly_from_json(const json& j);
std::vector<CPoly> polys_from_json(const json& j);  // array or {"polys": [...]}
PolyMatrix polymatrix_from_json(const json& j);
QMatrix qmatrix_from_json(const json& j);
Operator operator_from_json(const json& j);
// an Operator JSON becomes the d x l system of its symbol
PolyMatrix system_from_json(const json& j);

struct CertificateFile {
  PolyMatrix P;
  std::vector<CPoly> b;
  Certificate cert;
};
json to_json(const Certificate& c, const PolyMatrix& P, const std::vector<CPoly>& b);
CertificateFile certificate_from_json(const json& j);

json to_json(const RankReport& r);
json to_json(const FactorizationResult& f);
json to_json(const KernelEqualityResult& k);
json to_json(const WitnessFamily& w);
json to_json(const PotentialSolution& s);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
std::string dump(const json& j);

// header "x1,x2,comp_1..comp_d"; rows (j1, j2) with j2 fastest
GridInput read_grid_csv(const std::string& path);
std::string grid_csv(const std::vector<Eigen::MatrixXd>& comps, int denominator);
// header "edge,s,comp_1..comp_d" with edge in {left, right, bottom, top}
EdgeTraces read_traces_csv(const std::string& path);
std::string traces_csv(const EdgeTraces& t);

}  // namespace ccrank
