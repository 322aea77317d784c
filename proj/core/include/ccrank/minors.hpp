#pragma once

#include <cstdint>
#include <vector>

#include "ccrank/polymatrix.hpp"

namespace ccrank {

using IndexSet = std::vector<std::size_t>;

// all k-subsets of {0..n-1} in lexicographic order
std::vector<IndexSet> subsets(std::size_t n, std::size_t k);
std::uint64_t binomial(std::size_t n, std::size_t k);

// Laplace expansion along rows with memoization over column subsets
CPoly det(const PolyMatrix& M);
CPoly minor(const PolyMatrix& M, const IndexSet& rows, const IndexSet& cols);
PolyMatrix submatrix(const PolyMatrix& M, const IndexSet& rows, const IndexSet& cols);

struct Minor {
  IndexSet rows, cols;
  CPoly value;
};

// every r x r minor, zeros included, rows-major then columns
std::vector<Minor> all_minors(const PolyMatrix& M, std::size_t r);

// distinct nonzero minors, up to sign and scalar, ordered by (terms, degree, leading monomial)
std::vector<CPoly> distinct_minors(const std::vector<Minor>& minors);

// lazily walks the (rows, cols) grid; next() yields nonzero minors not proportional to earlier ones
class MinorStream {
 public:
  MinorStream(const PolyMatrix& M, std::size_t r);
  bool next(CPoly& out);
  std::size_t visited() const { return visited_; }
  std::uint64_t total() const { return static_cast<std::uint64_t>(R_.size()) * C_.size(); }

 private:
  const PolyMatrix& M_;
  std::vector<IndexSet> R_, C_;
  std::size_t i_ = 0, j_ = 0, visited_ = 0;
  std::vector<CPoly> seen_;
};

CPoly monic(const CPoly& p);

}  // namespace ccrank
