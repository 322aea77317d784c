#include "ccrank/poincare2d.hpp"

#include <algorithm>
#include <cmath>

#include "ccrank/crank.hpp"
#include "ccrank/error.hpp"

namespace ccrank {

namespace {

Eigen::MatrixXd to_eigen(const QMatrix& M) {
  Eigen::MatrixXd E(M.rows(), M.cols());
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) E(i, j) = to_double(M(i, j));
  return E;
}

QMatrix projection(const QMatrix& V, std::size_t dim) {
  if (V.cols() == 0) return QMatrix(dim, dim);
  return V * inverse(V.transpose() * V) * V.transpose();
}

QMatrix sym(const Operator& op, int a) {
  std::vector<Rational> xi(2, Rational(0));
  xi[a] = 1;
  return symbol_at(op, xi);
}

void require_first_order_2d(const Operator& op, const std::string& role) {
  require(op.n == 2, Errc::DimensionMismatch, role + " must act on two variables");
  if (op.order() > 1 || !op.fully_homogeneous() || (op.order() == 0 && !op.terms.empty()))
    fail(Errc::OrderNotSupported, role + " must be homogeneous of order one");
}

double vmax(const Eigen::MatrixXd& M) { return M.size() ? M.cwiseAbs().maxCoeff() : 0.0; }
double vmax(const Eigen::VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

std::vector<double> row_of(const Eigen::MatrixXd& M, long r) {
  std::vector<double> out(M.cols());
  for (long q = 0; q < M.cols(); ++q) out[q] = M(r, q);
  return out;
}

Eigen::MatrixXd cumulative_rows(const QuadRule& rule, const Eigen::MatrixXd& M) {
  Eigen::MatrixXd out(M.rows(), M.cols());
  for (long r = 0; r < M.rows(); ++r) {
    auto F = cumulative(rule, row_of(M, r));
    for (long q = 0; q < M.cols(); ++q) out(r, q) = F[q];
  }
  return out;
}

Eigen::VectorXd integrate_rows(const QuadRule& rule, const Eigen::MatrixXd& M) {
  Eigen::VectorXd out(M.rows());
  for (long r = 0; r < M.rows(); ++r) out(r) = integrate(rule, row_of(M, r));
  return out;
}

double default_tol(const QuadRule& rule, double scale) {
  const double h = rule.kind == QuadRule::Trapezoid ? 1.0 / rule.panels : 0.0;
  return (rule.kind == QuadRule::Trapezoid ? h : 1e-9) * (1 + scale);
}

}  // namespace

Decomposition decompose(const Operator& B) {
  require_first_order_2d(B, "B");
  const std::size_t d = B.d, l = B.l;
  QMatrix B1 = sym(B, 0), B2 = sym(B, 1);
  Decomposition dec;
  QMatrix K = hstack(kernel_matrix(B1), kernel_matrix(B2));
  dec.V2 = canonical_span(kernel_matrix(vstack(B1, B2)));
  dec.V0 = K.cols() == 0 ? QMatrix::identity(d) : canonical_span(kernel_matrix(K.transpose()));
  QMatrix V02 = hstack(dec.V0, dec.V2);
  dec.V1 = V02.cols() == 0 ? QMatrix::identity(d) : canonical_span(kernel_matrix(V02.transpose()));
  require(dec.V0.cols() + dec.V1.cols() + dec.V2.cols() == d, Errc::InternalError, "V0 + V1 + V2 != R^d");
  require((dec.V0.transpose() * dec.V1).is_zero() && (dec.V0.transpose() * dec.V2).is_zero() &&
              (dec.V1.transpose() * dec.V2).is_zero(),
          Errc::InternalError, "decomposition is not orthogonal");
  dec.P_V0 = projection(dec.V0, d);
  QMatrix Y = canonical_span(hstack(B1, B2));
  dec.P_Y = projection(Y, l);
  dec.C = Y.cols() == l ? QMatrix::identity(l) : Y.transpose();
  dec.spanning = dec.V0.cols() == 0 && Y.cols() == l;
  return dec;
}

SpanningForm make_spanning(const Operator& B) {
  SpanningForm s;
  s.dec = decompose(B);
  const std::size_t d = B.d;
  Operator PB = left_multiply(s.dec.P_Y, B);
  if (s.dec.V0.cols() == 0) {
    s.B_tilde = PB;
  } else {
    Operator P0 = make_operator(2, d, d, {{Monomial(2), s.dec.P_V0}});
    P0.row_orders.assign(d, 0);
    s.B_tilde = stack({PB, P0});
  }
  s.B_tilde.name = B.name.empty() ? "" : B.name + "_spanning";
  QMatrix perp = QMatrix::identity(d) - s.dec.P_V0;
  Operator Bp = right_multiply(B, perp);
  QMatrix Yp = canonical_span(hstack(sym(Bp, 0), sym(Bp, 1)));
  s.B_eff = left_multiply(Yp.cols() == B.l ? QMatrix::identity(B.l) : Yp.transpose(), Bp);
  s.B_eff.row_orders.assign(s.B_eff.l, 1);
  for (std::size_t c = 0; c < s.dec.V0.cols(); ++c) {
    PolyVec p;
    for (std::size_t i = 0; i < d; ++i) p.push_back(CPoly::constant(2, GaussRational(s.dec.V0(i, c))));
    s.X.basis.push_back(std::move(p));
  }
  s.X.degree_bound = 0;
  s.x_degree_bound = 0;
  return s;
}

QMatrix l_map(const Operator& B, const std::vector<Rational>& xi1, const std::vector<Rational>& xi2) {
  QMatrix K = kernel_matrix(symbol_at(B, xi1));
  try {
    return right_inverse_on_subspace(symbol_at(B, xi2), K);
  } catch (const Error& e) {
    if (e.code() == Errc::NotSurjective) fail(Errc::NotSpanning, std::string("B is not spanning: ") + e.what());
    throw;
  }
}

BoundaryData boundary_data(const Operator& B, const EdgeTraces& t, double tol) {
  require_first_order_2d(B, "B");
  const long Q = static_cast<long>(t.rule.size());
  for (const Eigen::MatrixXd* M : {&t.left, &t.right, &t.bottom, &t.top})
    require(M->rows() == static_cast<long>(B.d) && M->cols() == Q, Errc::BadSize, "edge traces have the wrong shape");
  Eigen::MatrixXd B1 = to_eigen(sym(B, 0)), B2 = to_eigen(sym(B, 1));
  BoundaryData bd;
  bd.w1 = {Edge::Q1, t.rule, B1 * (t.left - t.right)};
  bd.w2 = {Edge::Q2, t.rule, B2 * (t.bottom - t.top)};
  bd.c1 = integrate_rows(t.rule, bd.w1.values);
  bd.c2 = integrate_rows(t.rule, bd.w2.values);
  const double scale = std::max({vmax(bd.w1.values), vmax(bd.w2.values), vmax(t.left), vmax(t.bottom)});
  if (tol < 0) tol = default_tol(t.rule, scale);
  const double s = vmax(Eigen::VectorXd(bd.c1 + bd.c2));
  if (s > tol)
    fail(Errc::CompatibilityViolated,
         "|c1 + c2| = " + std::to_string(s) + " exceeds " + std::to_string(tol) + "; u is likely not B-free");
  return bd;
}

Eigen::VectorXd CorrectorS1::eval(double x1, double x2) const {
  return a11 * (x1 * x1) + a12 * (2 * x1 * x2) + a22 * (x2 * x2);
}

CorrectorS1 zero_s1(std::size_t d) {
  CorrectorS1 s;
  s.a11 = s.a12 = s.a22 = Eigen::VectorXd::Zero(d);
  return s;
}

CorrectorS1 corrector_s1(const Operator& B, const BoundaryData& bd, double tol) {
  require_first_order_2d(B, "B");
  const Rational o(1), z(0), mo(-1);
  Eigen::MatrixXd L12 = to_eigen(l_map(B, {o, z}, {mo, o}));
  Eigen::MatrixXd L21 = to_eigen(l_map(B, {z, o}, {o, z}));
  Eigen::MatrixXd Le12 = to_eigen(l_map(B, {o, z}, {z, o}));
  Eigen::MatrixXd B1 = to_eigen(sym(B, 0)), B2 = to_eigen(sym(B, 1));
  require(bd.c1.size() == static_cast<long>(B.l), Errc::DimensionMismatch, "boundary data has the wrong length");
  CorrectorS1 s;
  s.a12 = -L12 * bd.c1;
  s.a11 = L21 * (-B2 * s.a12);
  s.a22 = Le12 * (-B1 * s.a12);
  const double scale = 1 + vmax(bd.c1);
  s.freeness_residual = std::max(vmax(Eigen::VectorXd(B1 * s.a11 + B2 * s.a12)),
                                 vmax(Eigen::VectorXd(B1 * s.a12 + B2 * s.a22)));
  // c-integrals of S1u itself: -B[e1](a11 + a12) and -B[e2](a12 + a22)
  Eigen::VectorXd t1 = bd.c1 - B1 * (s.a11 + s.a12);
  Eigen::VectorXd t2 = bd.c2 - B2 * (s.a12 + s.a22);
  s.involution_residual = std::max(vmax(t1), vmax(t2));
  require(s.freeness_residual <= tol * scale, Errc::InternalError, "B S1u != 0");
  require(vmax(t1) <= tol * scale, Errc::InternalError, "c-integral of u + S1u does not vanish");
  return s;
}

CorrectorS2 corrector_s2(const Operator& B, const BoundaryData& bd, double tol) {
  require_first_order_2d(B, "B");
  const Rational o(1), z(0);
  Eigen::MatrixXd L1 = to_eigen(l_map(B, {o, z}, {z, o}));
  Eigen::MatrixXd L2 = to_eigen(l_map(B, {z, o}, {o, z}));
  Eigen::MatrixXd B1 = to_eigen(sym(B, 0)), B2 = to_eigen(sym(B, 1));
  const QuadRule& rule = bd.w1.rule;
  Eigen::MatrixXd W1 = cumulative_rows(rule, bd.w1.values), W2 = cumulative_rows(rule, bd.w2.values);
  CorrectorS2 s;
  s.q1 = {Edge::Q1, rule, -L1 * W1};
  s.q2 = {Edge::Q2, rule, -L2 * W2};
  s.corner01 = -L1 * integrate_rows(rule, bd.w1.values);
  s.corner10 = -L2 * integrate_rows(rule, bd.w2.values);
  const double scale = 1 + std::max(vmax(bd.w1.values), vmax(bd.w2.values));
  s.kernel_residual = std::max(vmax(Eigen::MatrixXd(B1 * s.q1.values)), vmax(Eigen::MatrixXd(B2 * s.q2.values)));
  s.derivative_residual = std::max(vmax(Eigen::MatrixXd(B2 * s.q1.values + W1)), vmax(Eigen::MatrixXd(B1 * s.q2.values + W2)));
  const double corner = std::max(vmax(s.corner01), vmax(s.corner10));
  if (corner > tol * scale)
    fail(Errc::CompatibilityViolated, "S2 corner value " + std::to_string(corner) + " does not vanish");
  require(s.kernel_residual <= 1e-10 * scale && s.derivative_residual <= 1e-10 * scale, Errc::InternalError,
          "S2 trace relations fail");
  return s;
}

Eigen::VectorXd VecPoly2::eval(double x1, double x2) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim);
  for (const auto& [e, v] : c) out += v * (std::pow(x1, e.first) * std::pow(x2, e.second));
  return out;
}

double VecPoly2::max_abs() const {
  double m = 0;
  for (const auto& [e, v] : c) m = std::max(m, vmax(v));
  return m;
}

VecPoly2 apply_first_order(const Operator& A, const VecPoly2& P) {
  Eigen::MatrixXd A1 = to_eigen(sym(A, 0)), A2 = to_eigen(sym(A, 1));
  VecPoly2 out;
  out.dim = A.l;
  auto add = [&](std::pair<int, int> e, const Eigen::VectorXd& v) {
    auto it = out.c.find(e);
    if (it == out.c.end()) out.c.emplace(e, v);
    else it->second += v;
  };
  for (const auto& [e, v] : P.c) {
    if (e.first > 0) add({e.first - 1, e.second}, A1 * v * e.first);
    if (e.second > 0) add({e.first, e.second - 1}, A2 * v * e.second);
  }
  return out;
}

PolyCorrector assemble_P3_P4(const Operator& A, const Operator& B, const CorrectorS1& s1, double tol) {
  require_first_order_2d(A, "A");
  require_first_order_2d(B, "B");
  require(A.l == B.d, Errc::DimensionMismatch, "A does not map into the domain of B");
  const std::size_t m = A.d;
  Eigen::MatrixXd A1 = to_eigen(sym(A, 0)), A2 = to_eigen(sym(A, 1));
  Eigen::MatrixXd I1 = to_eigen(pseudo_inverse(sym(A, 0))), I2 = to_eigen(pseudo_inverse(sym(A, 1)));
  Eigen::MatrixXd B1 = to_eigen(sym(B, 0)), B2 = to_eigen(sym(B, 1));
  const double scale = 1 + std::max({vmax(s1.a11), vmax(s1.a12), vmax(s1.a22)});
  auto member = [&](bool ok, const std::string& what) {
    if (!ok) fail(Errc::KernelMembershipViolated, what);
  };
  member(vmax(Eigen::VectorXd(B2 * s1.a11)) <= tol * scale, "a11 not in ker B[e2]");
  member(vmax(Eigen::VectorXd(B1 * s1.a22)) <= tol * scale, "a22 not in ker B[e1]");
  Eigen::VectorXd g11 = I2 * s1.a11, g22 = I1 * s1.a22;
  member(vmax(Eigen::VectorXd(A2 * g11 - s1.a11)) <= tol * scale, "a11 not in the image of A[e2]");
  member(vmax(Eigen::VectorXd(A1 * g22 - s1.a22)) <= tol * scale, "a22 not in the image of A[e1]");
  PolyCorrector pc;
  pc.P3.dim = pc.P4.dim = m;
  pc.P3.c[{2, 1}] = -g11;
  pc.P3.c[{1, 2}] = -g22;
  pc.a_prime = -2 * s1.a12 + 2 * A1 * g11 + 2 * A2 * g22;
  pc.b2 = 0.5 * I1 * pc.a_prime;
  member(vmax(Eigen::VectorXd(A1 * pc.b2 - 0.5 * pc.a_prime)) <= tol * scale, "a' not in the image of A[e1]");
  Eigen::VectorXd t = -A2 * pc.b2;
  member(vmax(Eigen::VectorXd(B1 * t)) <= tol * scale, "A[e2] b2 not in ker B[e1]");
  pc.b1 = I1 * t;
  member(vmax(Eigen::VectorXd(A1 * pc.b1 - t)) <= tol * scale, "A[e2] b2 not in the image of A[e1]");
  pc.P4.c[{3, 0}] = pc.b1 / 3.0;
  pc.P4.c[{2, 1}] = pc.b2;
  VecPoly2 sum = pc.P3;
  for (const auto& [e, v] : pc.P4.c) {
    auto it = sum.c.find(e);
    if (it == sum.c.end()) sum.c.emplace(e, v);
    else it->second += v;
  }
  VecPoly2 AP = apply_first_order(A, sum);
  AP.c[{2, 0}] += s1.a11;
  AP.c[{1, 1}] += 2 * s1.a12;
  AP.c[{0, 2}] += s1.a22;
  for (auto& [e, v] : AP.c) v.conservativeResize(A.l);
  pc.identity_residual = AP.max_abs();
  require(pc.identity_residual <= tol * scale, Errc::InternalError, "A(P3 + P4) != -S1u");
  return pc;
}

Eigen::MatrixXcd symbol_numeric(const Operator& op, cplx xi1, cplx xi2) {
  return xi1 * to_eigen(sym(op, 0)).cast<cplx>() + xi2 * to_eigen(sym(op, 1)).cast<cplx>();
}

Eigen::MatrixXcd pinv(const Eigen::MatrixXcd& M, double cutoff) {
  if (M.size() == 0) return Eigen::MatrixXcd::Zero(M.cols(), M.rows());
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0;
  Eigen::VectorXcd inv(s.size());
  for (long i = 0; i < s.size(); ++i) inv(i) = s(i) > cutoff * smax && s(i) > 0 ? 1.0 / s(i) : 0.0;
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

TorusInverse torus_inverse(const Operator& A, const Operator& B, const TorusField& total, double residual_limit,
                           double tol) {
  require_first_order_2d(A, "A");
  require_first_order_2d(B, "B");
  require(total.d == static_cast<int>(A.l), Errc::DimensionMismatch, "coefficient table has the wrong width");
  const int N = total.N;
  const std::size_t d = A.l, m = A.d;
  Eigen::MatrixXd A1 = to_eigen(sym(A, 0)), A2 = to_eigen(sym(A, 1));
  Eigen::MatrixXd B1 = to_eigen(sym(B, 0)), B2 = to_eigen(sym(B, 1));
  TorusInverse ti;
  ti.vhat = TorusField(N, static_cast<int>(m), true);
  double tmax = 0;
  for (const cplx& z : total.data) tmax = std::max(tmax, std::abs(z));
  const cplx twopii(0, 2 * M_PI);
  double worst = 0, h2 = 0;
  Eigen::VectorXcd T(d);
  for (int i1 = 0; i1 < N; ++i1)
    for (int i2 = 0; i2 < N; ++i2) {
      const int k1 = freq(i1, N), k2 = freq(i2, N);
      for (std::size_t c = 0; c < d; ++c) T(c) = total.at(static_cast<int>(c), i1, i2);
      if (k1 == 0 && k2 == 0) continue;
      Eigen::VectorXcd r = twopii * (double(k1) * B1 + double(k2) * B2).cast<cplx>() * T;
      const double rn = r.size() ? r.cwiseAbs().maxCoeff() : 0.0;
      h2 += r.squaredNorm() / std::pow(1.0 + double(k1) * k1 + double(k2) * k2, 2);
      if (rn > worst) worst = rn, ti.worst_k1 = k1, ti.worst_k2 = k2;
      Eigen::MatrixXcd Ak = twopii * (double(k1) * A1 + double(k2) * A2).cast<cplx>();
      Eigen::MatrixXcd P = pinv(Ak);
      Eigen::VectorXcd v = P * T;
      for (std::size_t c = 0; c < m; ++c) ti.vhat.at(static_cast<int>(c), i1, i2) = v(c);
      if (tmax > 0) {
        const double id = (Ak * v - T).cwiseAbs().maxCoeff() / tmax;
        ti.identity_residual = std::max(ti.identity_residual, id);
        Eigen::MatrixXcd ker = Eigen::MatrixXcd::Identity(m, m) - P * Ak;
        if (m) ti.kernel_orthogonality = std::max(ti.kernel_orthogonality, (ker.adjoint() * v).cwiseAbs().maxCoeff() / tmax);
      }
    }
  ti.annihilation_residual = tmax > 0 ? worst / tmax : 0.0;
  ti.h_minus2_proxy = std::sqrt(h2);
  if (ti.annihilation_residual > residual_limit)
    fail(Errc::ResidualTooLarge, "per-frequency residual " + std::to_string(ti.annihilation_residual) + " at k = (" +
                                     std::to_string(ti.worst_k1) + ", " + std::to_string(ti.worst_k2) + ")");
  ti.u0 = Eigen::VectorXd(d);
  for (std::size_t c = 0; c < d; ++c) ti.u0(c) = total.at(static_cast<int>(c), 0, 0).real();
  Eigen::MatrixXd Ap(d, 2 * m);
  Ap << A1, A2;
  Eigen::VectorXd p = pinv(Ap.cast<cplx>()).real() * ti.u0;
  const double miss = d ? (Ap * p - ti.u0).cwiseAbs().maxCoeff() : 0.0;
  if (miss > tol * (1 + vmax(ti.u0)))
    fail(Errc::MeanNotInImage, "mean " + std::to_string(miss) + " away from the span of the symbol images");
  ti.p1 = p.head(m);
  ti.p2 = p.tail(m);
  return ti;
}

Sampler grid_sampler(const GridInput& g, int degree) {
  require(g.M >= degree && g.M % degree == 0, Errc::BadSize,
          "grid size " + std::to_string(g.M) + " is not a multiple of the interpolation degree");
  for (const auto& v : g.values)
    require(v.rows() == g.M + 1 && v.cols() == g.M + 1, Errc::BadSize, "grid component has the wrong shape");
  auto stencil = [M = g.M, degree](double x, int& first, std::vector<double>& w) {
    const int panels = M / degree;
    int p = std::clamp(static_cast<int>(std::floor(x * panels)), 0, panels - 1);
    first = p * degree;
    w.assign(degree + 1, 1.0);
    for (int a = 0; a <= degree; ++a)
      for (int b = 0; b <= degree; ++b)
        if (a != b) w[a] *= (x * M - (first + b)) / double(a - b);
  };
  return [g, degree, stencil](double x1, double x2) {
    const std::size_t d = g.values.size();
    Eigen::VectorXd out = Eigen::VectorXd::Zero(d);
    int f1, f2;
    std::vector<double> w1, w2;
    if (g.traces && (x1 == 0 || x1 == 1 || x2 == 0 || x2 == 1)) {
      const EdgeTraces& t = *g.traces;
      const Eigen::MatrixXd& E = x1 == 0 ? t.left : x1 == 1 ? t.right : x2 == 0 ? t.bottom : t.top;
      const double s = (x1 == 0 || x1 == 1) ? x2 : x1;
      stencil(s, f1, w1);
      for (int a = 0; a <= degree; ++a) out += w1[a] * E.col(f1 + a);
      return out;
    }
    stencil(x1, f1, w1);
    stencil(x2, f2, w2);
    for (std::size_t c = 0; c < d; ++c) {
      double s = 0;
      for (int a = 0; a <= degree; ++a)
        for (int b = 0; b <= degree; ++b) s += w1[a] * w2[b] * g.values[c](f1 + a, f2 + b);
      out(c) = s;
    }
    return out;
  };
}

Eigen::VectorXd PotentialSolution::polynomial_part(double x1, double x2) const {
  return p1 * (x1 - 0.5) + p2 * (x2 - 0.5) + poly.P3.eval(x1, x2) + poly.P4.eval(x1, x2);
}

PotentialSolution solve(const Operator& A, const Operator& B, const Sampler& u, const SolveOptions& opt) {
  require_first_order_2d(A, "A");
  require_first_order_2d(B, "B");
  require(A.l == B.d, Errc::DimensionMismatch, "A does not map into the domain of B");
  require((symbol(B) * symbol(A)).is_zero(), Errc::NotAnnihilator, "B A != 0");
  const int N = opt.N;
  require(N >= 4 && (N & (N - 1)) == 0, Errc::BadSize, "grid size " + std::to_string(N) + " is not a power of two");
  const std::size_t d = B.d, m = A.d;

  PotentialSolution sol;
  sol.N = N;
  sol.m = m;
  sol.d = d;
  if (opt.check_constant_rank) {
    RankOptions ro;
    ro.seed = opt.seed;
    RankReport rr = is_constant_rank_C(symbol(B), ro);
    if (rr.constant_over_C == Verdict::No) fail(Errc::ConstantRankViolated, "B is not of constant rank over C");
    sol.diag.constant_rank = verdict_name(rr.constant_over_C);
  }
  SpanningForm sf = make_spanning(B);
  sol.dec = sf.dec;
  sol.X = sf.X;
  const Operator& Bs = sf.B_eff;

  QuadRule rule = gauss_panel_rule(opt.panels > 0 ? opt.panels : N / 4, opt.gauss_order);
  const long Q = static_cast<long>(rule.size());
  sol.diag.quadrature_nodes = rule.size();
  std::vector<Eigen::MatrixXd> U(d, Eigen::MatrixXd(Q, Q));
  for (long a = 0; a < Q; ++a)
    for (long b = 0; b < Q; ++b) {
      Eigen::VectorXd val = u(rule.nodes[a], rule.nodes[b]);
      require(val.size() == static_cast<long>(d), Errc::DimensionMismatch, "sampler returned the wrong length");
      for (std::size_t c = 0; c < d; ++c) U[c](a, b) = val(c);
    }
  EdgeTraces tr{rule, Eigen::MatrixXd(d, Q), Eigen::MatrixXd(d, Q), Eigen::MatrixXd(d, Q), Eigen::MatrixXd(d, Q)};
  for (long q = 0; q < Q; ++q) {
    const double s = rule.nodes[q];
    tr.left.col(q) = u(0, s);
    tr.right.col(q) = u(1, s);
    tr.bottom.col(q) = u(s, 0);
    tr.top.col(q) = u(s, 1);
  }

  // V0 part of u is a constant in X
  Eigen::MatrixXd P0 = to_eigen(sf.dec.P_V0);
  sol.x_constant = Eigen::VectorXd::Zero(d);
  if (sf.dec.V0.cols() > 0) {
    double umax = 0;
    for (std::size_t c = 0; c < d; ++c) umax = std::max(umax, vmax(U[c]));
    for (long a = 0; a < Q; ++a)
      for (long b = 0; b < Q; ++b) {
        Eigen::VectorXd val(d);
        for (std::size_t c = 0; c < d; ++c) val(c) = U[c](a, b);
        sol.x_constant += rule.weights[a] * rule.weights[b] * (P0 * val);
      }
    for (long a = 0; a < Q; ++a)
      for (long b = 0; b < Q; ++b) {
        Eigen::VectorXd val(d);
        for (std::size_t c = 0; c < d; ++c) val(c) = U[c](a, b);
        sol.diag.v0_deviation = std::max(sol.diag.v0_deviation, vmax(Eigen::VectorXd(P0 * val - sol.x_constant)));
      }
    if (sol.diag.v0_deviation > 1e-6 * (1 + umax))
      fail(Errc::CompatibilityViolated, "V0 component of u is not constant");
    for (std::size_t c = 0; c < d; ++c) U[c].array() -= sol.x_constant(c);
    for (Eigen::MatrixXd* M : {&tr.left, &tr.right, &tr.bottom, &tr.top}) M->colwise() -= sol.x_constant;
  }

  BoundaryData bd = boundary_data(Bs, tr, opt.tol * (1 + std::max(vmax(tr.left), vmax(tr.bottom))));
  sol.diag.c_sum = vmax(Eigen::VectorXd(bd.c1 + bd.c2));
  sol.s1 = corrector_s1(Bs, bd);
  sol.diag.s1_freeness = sol.s1.freeness_residual;
  sol.diag.s1_involution = sol.s1.involution_residual;

  for (long a = 0; a < Q; ++a)
    for (long b = 0; b < Q; ++b) {
      Eigen::VectorXd s = sol.s1.eval(rule.nodes[a], rule.nodes[b]);
      for (std::size_t c = 0; c < d; ++c) U[c](a, b) += s(c);
    }
  for (long q = 0; q < Q; ++q) {
    const double s = rule.nodes[q];
    tr.left.col(q) += sol.s1.eval(0, s);
    tr.right.col(q) += sol.s1.eval(1, s);
    tr.bottom.col(q) += sol.s1.eval(s, 0);
    tr.top.col(q) += sol.s1.eval(s, 1);
  }
  BoundaryData bd1 = boundary_data(Bs, tr, opt.tol * (1 + std::max(vmax(tr.left), vmax(tr.bottom))));
  sol.s2 = corrector_s2(Bs, bd1, opt.tol);
  sol.diag.s2_corner = std::max(vmax(sol.s2.corner01), vmax(sol.s2.corner10));
  sol.diag.s2_kernel = sol.s2.kernel_residual;
  sol.diag.s2_derivative = sol.s2.derivative_residual;

  Eigen::MatrixXcd E = fourier_weights(rule, N);
  TorusField total(N, static_cast<int>(d), true);
  for (std::size_t c = 0; c < d; ++c) {
    Eigen::MatrixXcd Tc = E * U[c].cast<cplx>() * E.transpose();
    Eigen::VectorXcd e1 = E * sol.s2.q1.values.row(c).transpose().cast<cplx>();
    Eigen::VectorXcd e2 = E * sol.s2.q2.values.row(c).transpose().cast<cplx>();
    for (int i1 = 0; i1 < N; ++i1)
      for (int i2 = 0; i2 < N; ++i2) total.at(static_cast<int>(c), i1, i2) = Tc(i1, i2) + e1(i2) + e2(i1);
  }

  TorusInverse ti = torus_inverse(A, B, total, opt.residual_limit, opt.tol);
  sol.diag.annihilation_residual = ti.annihilation_residual;
  sol.diag.h_minus2_proxy = ti.h_minus2_proxy;
  sol.diag.identity_residual = ti.identity_residual;
  sol.diag.kernel_orthogonality = ti.kernel_orthogonality;
  if (ti.identity_residual > opt.identity_limit)
    fail(Errc::ResidualTooLarge, "per-frequency identity residual " + std::to_string(ti.identity_residual));
  sol.vhat = ti.vhat;
  sol.u0 = ti.u0;
  sol.p1 = ti.p1;
  sol.p2 = ti.p2;
  sol.poly = assemble_P3_P4(A, B, sol.s1);
  sol.diag.poly_identity = sol.poly.identity_residual;

  TorusField vgrid = idft2(ti.vhat);
  TorusField Av(N, static_cast<int>(d), true);
  Eigen::MatrixXd A1 = to_eigen(sym(A, 0)), A2 = to_eigen(sym(A, 1));
  for (int i1 = 0; i1 < N; ++i1)
    for (int i2 = 0; i2 < N; ++i2) {
      Eigen::VectorXcd v(m);
      for (std::size_t c = 0; c < m; ++c) v(c) = ti.vhat.at(static_cast<int>(c), i1, i2);
      Eigen::VectorXcd w = cplx(0, 2 * M_PI) * (double(freq(i1, N)) * A1 + double(freq(i2, N)) * A2).cast<cplx>() * v;
      for (std::size_t c = 0; c < d; ++c) Av.at(static_cast<int>(c), i1, i2) = w(c);
    }
  Av = idft2(Av);
  VecPoly2 P34 = sol.poly.P3;
  for (const auto& [e, v] : sol.poly.P4.c) P34.c[e] = P34.c.count(e) ? Eigen::VectorXd(P34.c[e] + v) : v;
  VecPoly2 AP = apply_first_order(A, P34);
  Eigen::VectorXd AP1 = A1 * sol.p1 + A2 * sol.p2;

  sol.v.assign(m, Eigen::MatrixXd(N, N));
  double num = 0, den = 0;
  std::vector<Eigen::VectorXd> diff, truth;
  for (int i1 = 0; i1 < N; ++i1)
    for (int i2 = 0; i2 < N; ++i2) {
      const double x1 = double(i1) / N, x2 = double(i2) / N;
      Eigen::VectorXd pp = sol.polynomial_part(x1, x2);
      Eigen::VectorXd vv(m);
      for (std::size_t c = 0; c < m; ++c) {
        vv(c) = vgrid.at(static_cast<int>(c), i1, i2).real() + pp(c);
        sol.v[c](i1, i2) = vv(c);
      }
      const bool inside = std::min({x1, x2, 1 - x1, 1 - x2}) >= opt.interior - 1e-12;
      if (!inside) continue;
      Eigen::VectorXd uu = u(x1, x2) - sol.x_constant;
      Eigen::VectorXd av(d);
      for (std::size_t c = 0; c < d; ++c) av(c) = Av.at(static_cast<int>(c), i1, i2).real();
      av += AP1 + AP.eval(x1, x2);
      num += (av - uu).squaredNorm();
      den += uu.squaredNorm();
      if (opt.truth) {
        Eigen::VectorXd t = opt.truth(x1, x2);
        diff.push_back(vv - t);
        truth.push_back(t);
      }
    }
  sol.diag.reconstruction_error = den > 0 ? std::sqrt(num / den) : std::sqrt(num);
  if (opt.truth && !diff.empty()) {
    Eigen::VectorXd md = Eigen::VectorXd::Zero(m), mt = Eigen::VectorXd::Zero(m);
    for (std::size_t i = 0; i < diff.size(); ++i) md += diff[i], mt += truth[i];
    md /= double(diff.size());
    mt /= double(diff.size());
    double en = 0, ed = 0;
    for (std::size_t i = 0; i < diff.size(); ++i) en += (diff[i] - md).squaredNorm(), ed += (truth[i] - mt).squaredNorm();
    sol.diag.truth_error = ed > 0 ? std::sqrt(en / ed) : std::sqrt(en);
  }
  return sol;
}

PotentialSolution solve(const Operator& A, const Operator& B, const GridInput& g, const SolveOptions& opt) {
  require(g.values.size() == B.d, Errc::DimensionMismatch, "grid has the wrong number of components");
  require(g.M % opt.N == 0, Errc::BadSize, "grid resolution must be a multiple of N");
  return solve(A, B, grid_sampler(g), opt);
}

}  // namespace ccrank
