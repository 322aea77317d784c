#include "ccrank/spectral.hpp"

#include <cmath>

#include <fftw3.h>

#include "ccrank/error.hpp"

namespace ccrank {

namespace {

void check_size(int N) {
  require(N >= 2 && (N & (N - 1)) == 0, Errc::BadSize, "grid size " + std::to_string(N) + " is not a power of two");
}

TorusField transform(const TorusField& in, int sign) {
  check_size(in.N);
  TorusField out(in.N, in.d, sign < 0);
  const int N = in.N;
  std::vector<cplx> buf(std::size_t(N) * N);
  fftw_complex* p = reinterpret_cast<fftw_complex*>(buf.data());
  fftw_plan plan = fftw_plan_dft_2d(N, N, p, p, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
  const double scale = sign < 0 ? 1.0 / (double(N) * N) : 1.0;
  for (int c = 0; c < in.d; ++c) {
    std::copy(in.data.begin() + std::size_t(c) * N * N, in.data.begin() + std::size_t(c + 1) * N * N, buf.begin());
    fftw_execute(plan);
    for (std::size_t k = 0; k < buf.size(); ++k) out.data[std::size_t(c) * N * N + k] = buf[k] * scale;
  }
  fftw_destroy_plan(plan);
  return out;
}

}  // namespace

TorusField dft2(const TorusField& f) { return transform(f, -1); }
TorusField idft2(const TorusField& fhat) { return transform(fhat, +1); }

QuadRule trapezoid_rule(int M) {
  require(M >= 1, Errc::BadSize, "trapezoid rule needs M >= 1");
  QuadRule r;
  r.kind = QuadRule::Trapezoid;
  r.panels = M;
  r.order = 2;
  for (int j = 0; j <= M; ++j) {
    r.nodes.push_back(double(j) / M);
    r.weights.push_back((j == 0 || j == M ? 0.5 : 1.0) / M);
  }
  return r;
}

void gauss_legendre(int order, std::vector<double>& x, std::vector<double>& w) {
  x.assign(order, 0.0);
  w.assign(order, 0.0);
  for (int i = 0; i < order; ++i) {
    double t = std::cos(M_PI * (i + 0.75) / (order + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = t;
      for (int k = 2; k <= order; ++k) {
        double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double pn = order == 0 ? 1 : p1, pm = order == 1 ? 1 : p0;
      if (order == 1) pn = t, pm = 1;
      dp = order * (t * pn - pm) / (t * t - 1);
      double dt = pn / dp;
      t -= dt;
      if (std::abs(dt) < 1e-16) break;
    }
    x[order - 1 - i] = t;
    w[order - 1 - i] = 2 / ((1 - t * t) * dp * dp);
  }
}

QuadRule gauss_panel_rule(int panels, int order) {
  require(panels >= 1 && order >= 1, Errc::BadSize, "Gauss rule needs panels, order >= 1");
  QuadRule r;
  r.kind = QuadRule::GaussPanels;
  r.panels = panels;
  r.order = order;
  std::vector<double> x, w;
  gauss_legendre(order, x, w);
  const double h = 1.0 / panels;
  for (int p = 0; p < panels; ++p)
    for (int q = 0; q < order; ++q) {
      r.nodes.push_back(h * (p + 0.5 * (x[q] + 1)));
      r.weights.push_back(0.5 * h * w[q]);
    }
  return r;
}

namespace {

// S(q, p) = int_{-1}^{x_q} l_p(t) dt for the Lagrange basis on the Gauss nodes
Eigen::MatrixXd legendre_integration(int order) {
  std::vector<double> x, w;
  gauss_legendre(order, x, w);
  auto legendre = [](int kmax, double t) {
    std::vector<double> P(kmax + 2);
    P[0] = 1;
    if (kmax + 1 >= 1) P[1] = t;
    for (int k = 2; k <= kmax + 1; ++k) P[k] = ((2 * k - 1) * t * P[k - 1] - (k - 1) * P[k - 2]) / k;
    return P;
  };
  Eigen::MatrixXd S(order, order);
  for (int q = 0; q < order; ++q) {
    auto Pq = legendre(order, x[q]);
    for (int p = 0; p < order; ++p) {
      auto Pp = legendre(order, x[p]);
      double s = 0;
      for (int k = 0; k < order; ++k) {
        double ik = k == 0 ? x[q] + 1 : (Pq[k + 1] - Pq[k - 1]) / (2 * k + 1);
        s += (2 * k + 1) / 2.0 * w[p] * Pp[k] * ik;
      }
      S(q, p) = s;
    }
  }
  return S;
}

}  // namespace

std::vector<double> cumulative(const QuadRule& rule, const std::vector<double>& f) {
  require(f.size() == rule.size(), Errc::BadSize, "sample count differs from the quadrature rule");
  std::vector<double> F(f.size(), 0.0);
  if (rule.kind == QuadRule::Trapezoid) {
    for (std::size_t j = 1; j < f.size(); ++j)
      F[j] = F[j - 1] + 0.5 * (rule.nodes[j] - rule.nodes[j - 1]) * (f[j] + f[j - 1]);
    return F;
  }
  const int K = rule.order;
  Eigen::MatrixXd S = legendre_integration(K);
  const double half = 0.5 / rule.panels;
  double base = 0;
  for (int p = 0; p < rule.panels; ++p) {
    double total = 0;
    for (int q = 0; q < K; ++q) {
      double s = 0;
      for (int r = 0; r < K; ++r) s += S(q, r) * f[p * K + r];
      F[p * K + q] = base + half * s;
      total += rule.weights[p * K + q] * f[p * K + q];
    }
    base += total;
  }
  return F;
}

double integrate(const QuadRule& rule, const std::vector<double>& f) {
  require(f.size() == rule.size(), Errc::BadSize, "sample count differs from the quadrature rule");
  double s = 0;
  for (std::size_t q = 0; q < f.size(); ++q) s += rule.weights[q] * f[q];
  return s;
}

Eigen::MatrixXcd fourier_weights(const QuadRule& rule, int N) {
  Eigen::MatrixXcd E(N, rule.size());
  for (int i = 0; i < N; ++i) {
    const double k = freq(i, N);
    for (std::size_t q = 0; q < rule.size(); ++q)
      E(i, q) = rule.weights[q] * std::polar(1.0, -2 * M_PI * k * rule.nodes[q]);
  }
  return E;
}

std::vector<Eigen::MatrixXcd> edge_measure_coeffs(const EdgeTrace& t, int kmax) {
  require(kmax >= 0, Errc::BadSize, "negative kmax");
  const std::size_t nodes = t.rule.size();
  require(static_cast<long>(t.values.cols()) == static_cast<long>(nodes), Errc::BadSize, "trace has the wrong sample count");
  if (t.rule.kind == QuadRule::Trapezoid)
    require(static_cast<long>(nodes) - 1 >= 4L * kmax, Errc::UnderResolved,
            std::to_string(nodes - 1) + " intervals cannot resolve kmax = " + std::to_string(kmax));
  else
    require(static_cast<long>(nodes) >= 4L * kmax, Errc::UnderResolved,
            std::to_string(nodes) + " nodes cannot resolve kmax = " + std::to_string(kmax));
  const int K = 2 * kmax + 1;
  std::vector<Eigen::MatrixXcd> out;
  for (long c = 0; c < t.values.rows(); ++c) {
    std::vector<cplx> line(K);
    for (int k = -kmax; k <= kmax; ++k) {
      cplx s = 0;
      for (std::size_t q = 0; q < nodes; ++q)
        s += t.rule.weights[q] * t.values(c, q) * std::polar(1.0, -2 * M_PI * k * t.rule.nodes[q]);
      line[k + kmax] = s;
    }
    Eigen::MatrixXcd M(K, K);
    for (int a = 0; a < K; ++a)
      for (int b = 0; b < K; ++b) M(a, b) = t.edge == Edge::Q1 ? line[b] : line[a];
    out.push_back(std::move(M));
  }
  return out;
}

}  // namespace ccrank
