#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace ccrank {

using cplx = std::complex<double>;

// d components on an N x N grid, index (c, j1, j2) -> c*N*N + j1*N + j2 (j1 along x1)
struct TorusField {
  int N = 0;
  int d = 0;
  bool coefficients = false;
  std::vector<cplx> data;

  TorusField() = default;
  TorusField(int N_, int d_, bool coeff = false) : N(N_), d(d_), coefficients(coeff), data(std::size_t(d_) * N_ * N_) {}
  cplx& at(int c, int j1, int j2) { return data[(std::size_t(c) * N + j1) * N + j2]; }
  const cplx& at(int c, int j1, int j2) const { return data[(std::size_t(c) * N + j1) * N + j2]; }
};

// frequency of FFT index i in the band {-N/2 .. N/2-1}
inline int freq(int i, int N) { return i < N / 2 ? i : i - N; }

// f_hat(k) = N^-2 sum_j f(j/N) exp(-2 pi i k.j/N); inverse is the plain sum
TorusField dft2(const TorusField& f);
TorusField idft2(const TorusField& fhat);

struct QuadRule {
  enum Kind { Trapezoid, GaussPanels } kind = Trapezoid;
  int panels = 1, order = 1;
  std::vector<double> nodes, weights;  // on [0, 1]

  std::size_t size() const { return nodes.size(); }
};

QuadRule trapezoid_rule(int M);  // M+1 uniform nodes
QuadRule gauss_panel_rule(int panels, int order);
void gauss_legendre(int order, std::vector<double>& x, std::vector<double>& w);  // on [-1, 1]

// F(s_q) = int_0^{s_q} f on the rule's nodes; exact for piecewise polynomials of degree < order
std::vector<double> cumulative(const QuadRule& rule, const std::vector<double>& f);
double integrate(const QuadRule& rule, const std::vector<double>& f);

enum class Edge { Q1, Q2 };  // {0}x[0,1] and [0,1]x{0}

struct EdgeTrace {
  Edge edge = Edge::Q1;
  QuadRule rule;
  Eigen::MatrixXd values;  // components x nodes
};

// E(i, q) = w_q exp(-2 pi i k_i s_q), rows in FFT order
Eigen::MatrixXcd fourier_weights(const QuadRule& rule, int N);

// mu_hat(k), k in {-kmax..kmax}^2; result[c] is (2kmax+1)^2 with entry (k1+kmax, k2+kmax)
std::vector<Eigen::MatrixXcd> edge_measure_coeffs(const EdgeTrace& t, int kmax);

}  // namespace ccrank
