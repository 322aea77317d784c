#pragma once

#include <complex>
#include <cstddef>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "ccrank/error.hpp"

namespace ccrank {

// mpq_class keeps gcd(num, den) = 1 and den > 0 after every operation
using Rational = mpq_class;

Rational parse_rational(const std::string& s);
std::string to_string(const Rational& q);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline Rational conj(const Rational& q) { return q; }
inline double to_double(const Rational& q) { return q.get_d(); }

class GaussRational {
 public:
  GaussRational() = default;
  GaussRational(long v) : re_(v), im_(0) {}  // NOLINT(implicit)
  GaussRational(int v) : re_(v), im_(0) {}   // NOLINT(implicit)
  GaussRational(Rational re) : re_(std::move(re)), im_(0) {}  // NOLINT(implicit)
  GaussRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussRational i() { return GaussRational(Rational(0), Rational(1)); }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussRational conj() const { return GaussRational(re_, -im_); }
  Rational norm2() const { return re_ * re_ + im_ * im_; }
  GaussRational inverse() const {
    require(!is_zero(), Errc::InternalError, "inverse of zero");
    Rational n = norm2();
    return GaussRational(re_ / n, -im_ / n);
  }

  GaussRational operator-() const { return GaussRational(-re_, -im_); }
  GaussRational& operator+=(const GaussRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussRational& operator-=(const GaussRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussRational& operator*=(const GaussRational& o) {
    if (o.is_real()) {
      re_ *= o.re_;
      im_ *= o.re_;
      return *this;
    }
    Rational r = re_ * o.re_ - im_ * o.im_;
    im_ = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    return *this;
  }
  GaussRational& operator/=(const GaussRational& o) {
    if (o.is_real()) {
      require(sgn(o.re_) != 0, Errc::InternalError, "division by zero");
      re_ /= o.re_;
      im_ /= o.re_;
      return *this;
    }
    return *this *= o.inverse();
  }

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussRational& a, const GaussRational& b) { return !(a == b); }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

 private:
  Rational re_{0};
  Rational im_{0};
};

inline bool is_zero(const GaussRational& z) { return z.is_zero(); }
inline GaussRational conj(const GaussRational& z) { return z.conj(); }

// "a", "bi", "a+bi", "a-bi" with rational a, b
std::string to_string(const GaussRational& z);
GaussRational parse_gauss(const std::string& s);
std::ostream& operator<<(std::ostream& os, const GaussRational& z);

template <class F>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows_(r), cols_(c), a_(r * c, F(0)) {}
  Matrix(std::size_t r, std::size_t c, std::vector<F> data) : rows_(r), cols_(c), a_(std::move(data)) {
    require(a_.size() == r * c, Errc::DimensionMismatch, "matrix data size");
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = F(1);
    return m;
  }
  static Matrix from_rows(const std::vector<std::vector<F>>& rows) {
    std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      require(rows[i].size() == c, Errc::DimensionMismatch, "ragged rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }
  static Matrix column(const std::vector<F>& v) {
    Matrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  F& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const F& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::vector<F> col(std::size_t j) const {
    std::vector<F> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  std::vector<F> row(std::size_t i) const {
    return std::vector<F>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
  Matrix adjoint() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = conj((*this)(i, j));
    return t;
  }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!ccrank::is_zero(x)) return false;
    return true;
  }

  Matrix select_cols(const std::vector<std::size_t>& idx) const {
    Matrix m(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
    return m;
  }
  Matrix select_rows(const std::vector<std::size_t>& idx) const {
    Matrix m(idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(idx[i], j);
    return m;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    require(a.cols_ == b.rows_, Errc::DimensionMismatch, "matrix product");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const F& x = a(i, k);
        if (ccrank::is_zero(x)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
      }
    return c;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) {
    require(a.rows_ == b.rows_ && a.cols_ == b.cols_, Errc::DimensionMismatch, "matrix sum");
    for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] += b.a_[i];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    require(a.rows_ == b.rows_ && a.cols_ == b.cols_, Errc::DimensionMismatch, "matrix difference");
    for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] -= b.a_[i];
    return a;
  }
  friend Matrix operator*(const F& s, Matrix a) {
    for (auto& x : a.a_) x *= s;
    return a;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  std::vector<F> apply(const std::vector<F>& v) const {
    require(v.size() == cols_, Errc::DimensionMismatch, "matrix-vector product");
    std::vector<F> out(rows_, F(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!ccrank::is_zero(v[j])) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  const std::vector<F>& data() const { return a_; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<F> a_;
};

using QMatrix = Matrix<Rational>;
using GMatrix = Matrix<GaussRational>;

template <class F>
Matrix<F> hstack(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.cols() == 0) return b;
  if (b.cols() == 0) return a;
  require(a.rows() == b.rows(), Errc::DimensionMismatch, "hstack");
  Matrix<F> m(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
  }
  return m;
}

template <class F>
Matrix<F> vstack(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.rows() == 0) return b;
  if (b.rows() == 0) return a;
  require(a.cols() == b.cols(), Errc::DimensionMismatch, "vstack");
  Matrix<F> m(a.rows() + b.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i) m(a.rows() + i, j) = b(i, j);
  }
  return m;
}

inline GMatrix to_gauss(const QMatrix& m) {
  GMatrix g(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) g(i, j) = GaussRational(m(i, j));
  return g;
}

template <class F>
struct RrefResult {
  Matrix<F> R;
  std::vector<std::size_t> pivots;
  Matrix<F> T;  // T * M = R
};

template <class F>
RrefResult<F> rref(const Matrix<F>& M) {
  RrefResult<F> res{M, {}, Matrix<F>::identity(M.rows())};
  Matrix<F>& R = res.R;
  Matrix<F>& T = res.T;
  const std::size_t m = R.rows(), n = R.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = r;
    while (p < m && is_zero(R(p, c))) ++p;
    if (p == m) continue;
    if (p != r) {
      for (std::size_t j = 0; j < n; ++j) std::swap(R(p, j), R(r, j));
      for (std::size_t j = 0; j < m; ++j) std::swap(T(p, j), T(r, j));
    }
    F inv = F(1) / R(r, c);
    for (std::size_t j = 0; j < n; ++j) R(r, j) *= inv;
    for (std::size_t j = 0; j < m; ++j) T(r, j) *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || is_zero(R(i, c))) continue;
      F f = R(i, c);
      for (std::size_t j = 0; j < n; ++j)
        if (!is_zero(R(r, j))) R(i, j) -= f * R(r, j);
      for (std::size_t j = 0; j < m; ++j)
        if (!is_zero(T(r, j))) T(i, j) -= f * T(r, j);
    }
    res.pivots.push_back(c);
    ++r;
  }
  return res;
}

// elimination without the transform, for rank-only callers
template <class F>
std::size_t rank(Matrix<F> R) {
  const std::size_t m = R.rows(), n = R.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = r;
    while (p < m && is_zero(R(p, c))) ++p;
    if (p == m) continue;
    if (p != r)
      for (std::size_t j = c; j < n; ++j) std::swap(R(p, j), R(r, j));
    F inv = F(1) / R(r, c);
    for (std::size_t i = r + 1; i < m; ++i) {
      if (is_zero(R(i, c))) continue;
      F f = R(i, c) * inv;
      for (std::size_t j = c; j < n; ++j)
        if (!is_zero(R(r, j))) R(i, j) -= f * R(r, j);
    }
    ++r;
  }
  return r;
}

// columns span ker M; one column per free variable
template <class F>
Matrix<F> kernel_matrix(const Matrix<F>& M) {
  auto rr = rref(M);
  const std::size_t n = M.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : rr.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t j = 0; j < n; ++j)
    if (!is_pivot[j]) free.push_back(j);
  Matrix<F> K(n, free.size());
  for (std::size_t f = 0; f < free.size(); ++f) {
    K(free[f], f) = F(1);
    for (std::size_t r = 0; r < rr.pivots.size(); ++r) K(rr.pivots[r], f) = -rr.R(r, free[f]);
  }
  return K;
}

template <class F>
std::vector<std::vector<F>> kernel_basis(const Matrix<F>& M) {
  Matrix<F> K = kernel_matrix(M);
  std::vector<std::vector<F>> out;
  for (std::size_t j = 0; j < K.cols(); ++j) out.push_back(K.col(j));
  return out;
}

template <class F>
Matrix<F> inverse(const Matrix<F>& M) {
  require(M.rows() == M.cols(), Errc::DimensionMismatch, "inverse of non-square matrix");
  auto rr = rref(M);
  require(rr.pivots.size() == M.rows(), Errc::NotSurjective, "singular matrix");
  return rr.T;
}

// pivot columns of M, a basis of its column space
template <class F>
Matrix<F> column_space_basis(const Matrix<F>& M) {
  return M.select_cols(rref(M).pivots);
}

// canonical basis of the column space: rows of rref(M^T), returned as columns
template <class F>
Matrix<F> canonical_span(const Matrix<F>& M) {
  auto rr = rref(M.transpose());
  std::vector<std::size_t> keep(rr.pivots.size());
  for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = i;
  return rr.R.select_rows(keep).transpose();
}

template <class F>
bool same_span(const Matrix<F>& A, const Matrix<F>& B) {
  require(A.rows() == B.rows(), Errc::DimensionMismatch, "same_span");
  return canonical_span(A) == canonical_span(B);
}

template <class F>
bool in_span(const Matrix<F>& A, const std::vector<F>& v) {
  return rank(hstack(A, Matrix<F>::column(v))) == rank(A);
}

// L = S X with (M S) X = Id, X the minimum-norm solution measured in the
// domain metric: X = G^-1 K* (K G^-1 K*)^-1, K = M S, G = S* S.
template <class F>
Matrix<F> right_inverse_on_subspace(const Matrix<F>& M, const Matrix<F>& S) {
  require(S.rows() == M.cols(), Errc::DimensionMismatch, "subspace basis has wrong length");
  const std::size_t l = M.rows();
  if (l == 0) return Matrix<F>(M.cols(), 0);
  Matrix<F> K = M * S;
  if (S.cols() == 0 || rank(K) < l)
    fail(Errc::NotSurjective, "restriction to the subspace is not onto (rank " +
                                  std::to_string(S.cols() ? rank(K) : 0) + " < " + std::to_string(l) + ")");
  Matrix<F> B = column_space_basis(S);
  K = M * B;
  Matrix<F> Ginv = inverse(B.adjoint() * B);
  Matrix<F> KG = K * Ginv;
  Matrix<F> X = Ginv * K.adjoint() * inverse(KG * K.adjoint());
  return B * X;
}

// Moore-Penrose inverse from the full-rank factorization M = C F
template <class F>
Matrix<F> pseudo_inverse(const Matrix<F>& M) {
  auto rr = rref(M);
  const std::size_t r = rr.pivots.size();
  if (r == 0) return Matrix<F>(M.cols(), M.rows());
  Matrix<F> C = M.select_cols(rr.pivots);
  std::vector<std::size_t> top(r);
  for (std::size_t i = 0; i < r; ++i) top[i] = i;
  Matrix<F> Fm = rr.R.select_rows(top);
  Matrix<F> Fs = Fm.adjoint(), Cs = C.adjoint();
  return Fs * inverse(Fm * Fs) * inverse(Cs * C) * Cs;
}

template <class F>
Matrix<F> orthogonal_complement(const Matrix<F>& basis_cols, std::size_t dim) {
  if (basis_cols.cols() == 0) return Matrix<F>::identity(dim);
  return kernel_matrix(basis_cols.adjoint());
}

std::vector<std::string> to_strings(const std::vector<GaussRational>& v);

}  // namespace ccrank
