#pragma once

#include <cstddef>
#include <vector>

#include "pmcanon/enumeration.hpp"
#include "pmcanon/matrix.hpp"

namespace pmcanon {

// Integer reading of a p = 3 matrix: digit 2 stands for -1.
class SignView {
 public:
  // Throws ContractError unless p = 3.
  explicit SignView(const Matrix& a);

  std::size_t rows() const noexcept { return n_; }
  std::size_t cols() const noexcept { return m_; }
  int operator()(std::size_t i, std::size_t j) const noexcept {
    return v_[i * m_ + j];
  }

  // Exact integer inner product of rows i and k.
  long row_dot(std::size_t i, std::size_t k) const noexcept;

 private:
  std::size_t n_, m_;
  std::vector<int> v_;
};

inline int sign_of(Digit d) noexcept { return d == 2 ? -1 : static_cast<int>(d); }

// Square p = 3 matrix without zeros whose sign view satisfies H H^T = n I.
bool is_hadamard(const Matrix& a);

// Square p = 3 matrix whose sign view satisfies W W^T = k I; 1 <= k <= n.
bool is_weighing(const Matrix& a, std::size_t k);

// Enumeration filters with row-wise pruning: every new row must have weight k
// and be orthogonal to the rows already placed.
MatrixFilter hadamard_filter(std::size_t n);
MatrixFilter weighing_filter(std::size_t n, std::size_t k);

// Canonical representatives (permutation-only equivalence) of the n x n
// Hadamard matrices; orders with none give an empty census.
ClassCensus classify_hadamard(std::size_t n, EnumerationOptions options = {});

ClassCensus classify_weighing(std::size_t n, std::size_t k,
                              EnumerationOptions options = {});

}  // namespace pmcanon
