#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ccrank/opcore.hpp"
#include "ccrank/spectral.hpp"

namespace ccrank {

struct Decomposition {
  QMatrix V0, V1, V2;  // column bases
  QMatrix P_V0, P_Y;
  QMatrix C;           // rows span Y = span of the symbol images (identity when Y = R^l)
  bool spanning = false;
};
Decomposition decompose(const Operator& B);

struct SpanningForm {
  Operator B_tilde;  // (P_Y B, P_V0) with componentwise orders
  Operator B_eff;    // C B P_{V0 perp}: first order, spanning
  Decomposition dec;
  PolySpace X;       // V0-valued constants
  int x_degree_bound = 0;
};
SpanningForm make_spanning(const Operator& B);

// L with range in ker B[xi1] and B[xi2] L = Id
QMatrix l_map(const Operator& B, const std::vector<Rational>& xi1, const std::vector<Rational>& xi2);

// u on the four sides, components x nodes: left u(0,s), right u(1,s), bottom u(s,0), top u(s,1)
struct EdgeTraces {
  QuadRule rule;
  Eigen::MatrixXd left, right, bottom, top;
};

struct BoundaryData {
  EdgeTrace w1, w2;
  Eigen::VectorXd c1, c2;
};
// tol < 0 picks a tolerance scaled by the rule resolution
BoundaryData boundary_data(const Operator& B, const EdgeTraces& t, double tol = -1);

struct CorrectorS1 {
  Eigen::VectorXd a11, a12, a22;
  double freeness_residual = 0;   // |B S1u| coefficients
  double involution_residual = 0; // c-integrals of u + S1u
  Eigen::VectorXd eval(double x1, double x2) const;
};
CorrectorS1 corrector_s1(const Operator& B, const BoundaryData& bd, double tol = 1e-10);
CorrectorS1 zero_s1(std::size_t d);

struct CorrectorS2 {
  EdgeTrace q1, q2;  // S2 on {0}x[0,1] and [0,1]x{0}
  Eigen::VectorXd corner01, corner10;
  double kernel_residual = 0;
  double derivative_residual = 0;
};
CorrectorS2 corrector_s2(const Operator& B, const BoundaryData& bd, double tol = 1e-8);

// vector-valued polynomial in (x1, x2), keyed by exponents
struct VecPoly2 {
  std::size_t dim = 0;
  std::map<std::pair<int, int>, Eigen::VectorXd> c;

  Eigen::VectorXd eval(double x1, double x2) const;
  double max_abs() const;
};
// A1 d1 P + A2 d2 P for first-order A
VecPoly2 apply_first_order(const Operator& A, const VecPoly2& P);

struct PolyCorrector {
  VecPoly2 P3, P4;
  Eigen::VectorXd a_prime, b1, b2;
  double identity_residual = 0;  // |A(P3+P4) + S1u|
};
PolyCorrector assemble_P3_P4(const Operator& A, const Operator& B, const CorrectorS1& s1, double tol = 1e-10);

Eigen::MatrixXcd symbol_numeric(const Operator& op, cplx xi1, cplx xi2);
Eigen::MatrixXcd pinv(const Eigen::MatrixXcd& M, double cutoff = 1e-10);

struct TorusInverse {
  TorusField vhat;
  Eigen::VectorXd u0, p1, p2;  // P1(x) = p1 (x1 - 1/2) + p2 (x2 - 1/2)
  double annihilation_residual = 0;
  double h_minus2_proxy = 0;
  double identity_residual = 0;
  double kernel_orthogonality = 0;
  int worst_k1 = 0, worst_k2 = 0;
};
TorusInverse torus_inverse(const Operator& A, const Operator& B, const TorusField& total,
                           double residual_limit = 1e-6, double tol = 1e-8);

using Sampler = std::function<Eigen::VectorXd(double, double)>;

struct GridInput {
  int M = 0;                             // nodes j/M, j = 0..M
  std::vector<Eigen::MatrixXd> values;   // per component, (j1, j2)
  std::optional<EdgeTraces> traces;      // trapezoid nodes matching the grid
};
// tensor piecewise Lagrange interpolant of the given degree; edges read from traces when present
Sampler grid_sampler(const GridInput& g, int degree = 4);

struct SolveOptions {
  int N = 128;
  int gauss_order = 16;
  int panels = 0;              // 0: N/4
  double interior = 0.125;
  double residual_limit = 1e-6;
  double identity_limit = 1e-9;
  double tol = 1e-8;
  bool check_constant_rank = true;
  std::uint64_t seed = kDefaultSeed;
  Sampler truth;               // optional potential for error reporting
};

struct Diagnostics {
  double c_sum = 0;
  double s1_freeness = 0, s1_involution = 0;
  double s2_corner = 0, s2_kernel = 0, s2_derivative = 0;
  double annihilation_residual = 0;
  double h_minus2_proxy = 0;
  double identity_residual = 0;
  double kernel_orthogonality = 0;
  double poly_identity = 0;
  double v0_deviation = 0;
  double reconstruction_error = 0;
  double truth_error = -1;
  std::string constant_rank = "unchecked";
  std::size_t quadrature_nodes = 0;
};

struct PotentialSolution {
  int N = 0;
  std::size_t m = 0, d = 0;
  std::vector<Eigen::MatrixXd> v;  // per component, (j1, j2) at nodes j/N
  TorusField vhat;
  Eigen::VectorXd u0, p1, p2, x_constant;
  CorrectorS1 s1;
  CorrectorS2 s2;
  PolyCorrector poly;
  PolySpace X;
  Decomposition dec;
  Diagnostics diag;

  Eigen::VectorXd polynomial_part(double x1, double x2) const;
};

PotentialSolution solve(const Operator& A, const Operator& B, const Sampler& u, const SolveOptions& opt = {});
PotentialSolution solve(const Operator& A, const Operator& B, const GridInput& g, const SolveOptions& opt = {});

}  // namespace ccrank
