#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace pmcanon {

using Digit = std::uint8_t;

// Largest supported base; digits are stored in one byte.
inline constexpr unsigned kMaxBase = 256;

// n x m matrix over [p] = {0, ..., p-1}, row-major.
class Matrix {
 public:
  // Zero matrix. Throws ContractError unless n, m >= 1 and 2 <= p <= kMaxBase.
  Matrix(std::size_t n, std::size_t m, unsigned p);

  // Throws RangeError if an entry is outside [0, p-1].
  Matrix(std::size_t n, std::size_t m, unsigned p, std::vector<Digit> entries);

  // Rows given as nested lists; all rows must have the same length.
  static Matrix from_rows(unsigned p,
                          std::initializer_list<std::initializer_list<int>> rows);
  static Matrix from_rows(unsigned p, const std::vector<std::vector<int>>& rows);

  std::size_t rows() const noexcept { return n_; }
  std::size_t cols() const noexcept { return m_; }
  unsigned base() const noexcept { return p_; }

  Digit operator()(std::size_t i, std::size_t j) const noexcept {
    return entries_[i * m_ + j];
  }
  // Throws RangeError if v >= p.
  void set(std::size_t i, std::size_t j, unsigned v);

  std::span<const Digit> row(std::size_t i) const noexcept {
    return {entries_.data() + i * m_, m_};
  }
  std::span<const Digit> entries() const noexcept { return entries_; }

  Matrix transpose() const;

  // Rows [row0, row0 + nrows) and columns [col0, col0 + ncols); both counts >= 1.
  Matrix submatrix(std::size_t row0, std::size_t nrows, std::size_t col0,
                   std::size_t ncols) const;

  bool same_shape(const Matrix& other) const noexcept {
    return n_ == other.n_ && m_ == other.m_ && p_ == other.p_;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t n_;
  std::size_t m_;
  unsigned p_;
  std::vector<Digit> entries_;
};

// Number of nonzero entries in a row.
std::size_t nonzero_count(std::span<const Digit> row) noexcept;

}  // namespace pmcanon
