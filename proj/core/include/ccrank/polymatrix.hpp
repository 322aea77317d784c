#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "ccrank/multipoly.hpp"

namespace ccrank {

// matrix of polynomials over Q(i); rows x cols
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t r, std::size_t c, int nvars) : r_(r), c_(c), n_(nvars), a_(r * c, CPoly(nvars)) {}

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  int nvars() const { return n_; }
  CPoly& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const CPoly& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  PolyMatrix transpose() const {
    PolyMatrix t(c_, r_, n_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  std::vector<CPoly> row(std::size_t i) const {
    return std::vector<CPoly>(a_.begin() + i * c_, a_.begin() + (i + 1) * c_);
  }
  std::vector<CPoly> col(std::size_t j) const {
    std::vector<CPoly> v;
    for (std::size_t i = 0; i < r_; ++i) v.push_back((*this)(i, j));
    return v;
  }

  bool is_zero() const {
    for (const auto& p : a_)
      if (!p.is_zero()) return false;
    return true;
  }

  GMatrix evaluate(const std::vector<GaussRational>& xi) const {
    GMatrix m(r_, c_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) m(i, j) = (*this)(i, j).evaluate(xi);
    return m;
  }

  Eigen::MatrixXcd evaluate_numeric(const std::vector<std::complex<double>>& xi) const {
    Eigen::MatrixXcd m(r_, c_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) m(i, j) = (*this)(i, j).evaluate_numeric(xi);
    return m;
  }

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    require(a.c_ == b.r_, Errc::DimensionMismatch, "symbol product: inner dimensions differ");
    PolyMatrix m(a.r_, b.c_, std::max(a.n_, b.n_));
    for (std::size_t i = 0; i < a.r_; ++i)
      for (std::size_t k = 0; k < a.c_; ++k) {
        if (a(i, k).is_zero()) continue;
        for (std::size_t j = 0; j < b.c_; ++j)
          if (!b(k, j).is_zero()) m(i, j) += a(i, k) * b(k, j);
      }
    return m;
  }
  friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) {
    require(a.r_ == b.r_ && a.c_ == b.c_, Errc::DimensionMismatch, "symbol difference");
    PolyMatrix m = a;
    for (std::size_t k = 0; k < m.a_.size(); ++k) m.a_[k] -= b.a_[k];
    return m;
  }
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
  }
  friend bool operator!=(const PolyMatrix& a, const PolyMatrix& b) { return !(a == b); }

  const std::vector<CPoly>& entries() const { return a_; }

 private:
  std::size_t r_ = 0, c_ = 0;
  int n_ = 0;
  std::vector<CPoly> a_;
};

using SymbolMatrix = PolyMatrix;

}  // namespace ccrank
