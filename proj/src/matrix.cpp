#include "pmcanon/matrix.hpp"

#include <algorithm>
#include <string>

#include "pmcanon/errors.hpp"

namespace pmcanon {

namespace {

void check_shape(std::size_t n, std::size_t m, unsigned p) {
  if (n == 0 || m == 0) throw ContractError("matrix needs n >= 1 and m >= 1");
  if (p < 2) throw ContractError("base p must be >= 2");
  if (p > kMaxBase)
    throw ContractError("base p must be <= " + std::to_string(kMaxBase));
}

}  // namespace

Matrix::Matrix(std::size_t n, std::size_t m, unsigned p)
    : n_(n), m_(m), p_(p) {
  check_shape(n, m, p);
  entries_.assign(n * m, 0);
}

Matrix::Matrix(std::size_t n, std::size_t m, unsigned p,
               std::vector<Digit> entries)
    : n_(n), m_(m), p_(p), entries_(std::move(entries)) {
  check_shape(n, m, p);
  if (entries_.size() != n * m)
    throw ContractError("entry count does not match n*m");
  for (Digit d : entries_)
    if (d >= p_) throw RangeError("matrix entry outside [0, p-1]");
}

Matrix Matrix::from_rows(
    unsigned p, std::initializer_list<std::initializer_list<int>> rows) {
  std::vector<std::vector<int>> v;
  for (auto r : rows) v.emplace_back(r);
  return from_rows(p, v);
}

Matrix Matrix::from_rows(unsigned p, const std::vector<std::vector<int>>& rows) {
  if (rows.empty() || rows.front().empty())
    throw ContractError("matrix needs at least one row and one column");
  const std::size_t m = rows.front().size();
  std::vector<Digit> entries;
  entries.reserve(rows.size() * m);
  for (const auto& r : rows) {
    if (r.size() != m) throw ContractError("ragged rows");
    for (int v : r) {
      if (v < 0 || static_cast<unsigned>(v) >= p)
        throw RangeError("matrix entry outside [0, p-1]");
      entries.push_back(static_cast<Digit>(v));
    }
  }
  return Matrix(rows.size(), m, p, std::move(entries));
}

void Matrix::set(std::size_t i, std::size_t j, unsigned v) {
  if (i >= n_ || j >= m_) throw ContractError("matrix index out of bounds");
  if (v >= p_) throw RangeError("matrix entry outside [0, p-1]");
  entries_[i * m_ + j] = static_cast<Digit>(v);
}

Matrix Matrix::transpose() const {
  std::vector<Digit> t(n_ * m_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < m_; ++j) t[j * n_ + i] = entries_[i * m_ + j];
  return Matrix(m_, n_, p_, std::move(t));
}

Matrix Matrix::submatrix(std::size_t row0, std::size_t nrows, std::size_t col0,
                         std::size_t ncols) const {
  if (nrows == 0 || ncols == 0 || row0 + nrows > n_ || col0 + ncols > m_)
    throw ContractError("submatrix out of bounds");
  std::vector<Digit> e;
  e.reserve(nrows * ncols);
  for (std::size_t i = row0; i < row0 + nrows; ++i)
    for (std::size_t j = col0; j < col0 + ncols; ++j)
      e.push_back(entries_[i * m_ + j]);
  return Matrix(nrows, ncols, p_, std::move(e));
}

std::size_t nonzero_count(std::span<const Digit> row) noexcept {
  return static_cast<std::size_t>(
      std::count_if(row.begin(), row.end(), [](Digit d) { return d != 0; }));
}

}  // namespace pmcanon
