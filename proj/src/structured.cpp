#include "pmcanon/structured.hpp"

#include <string>

#include "pmcanon/errors.hpp"

namespace pmcanon {

SignView::SignView(const Matrix& a) : n_(a.rows()), m_(a.cols()) {
  if (a.base() != 3) throw ContractError("sign view needs p = 3");
  v_.reserve(n_ * m_);
  for (Digit d : a.entries()) v_.push_back(sign_of(d));
}

long SignView::row_dot(std::size_t i, std::size_t k) const noexcept {
  long s = 0;
  for (std::size_t j = 0; j < m_; ++j) s += v_[i * m_ + j] * v_[k * m_ + j];
  return s;
}

namespace {

void require_square_ternary(const Matrix& a) {
  if (a.rows() != a.cols()) throw ContractError("matrix must be square");
  if (a.base() != 3) throw ContractError("matrix must have p = 3");
}

bool gram_is_scalar(const SignView& w, long k) {
  for (std::size_t i = 0; i < w.rows(); ++i)
    for (std::size_t r = i; r < w.rows(); ++r)
      if (w.row_dot(i, r) != (i == r ? k : 0)) return false;
  return true;
}

bool admit_weighing_row(const PartialRows& pr, std::size_t k) {
  const std::size_t last = pr.rows - 1;
  std::size_t weight = 0;
  for (std::size_t j = 0; j < pr.m; ++j) weight += pr.at(last, j) != 0;
  if (weight != k) return false;
  for (std::size_t i = 0; i < last; ++i) {
    long dot = 0;
    for (std::size_t j = 0; j < pr.m; ++j)
      dot += sign_of(pr.at(i, j)) * sign_of(pr.at(last, j));
    if (dot != 0) return false;
  }
  return true;
}

}  // namespace

bool is_hadamard(const Matrix& a) {
  require_square_ternary(a);
  for (Digit d : a.entries())
    if (d == 0) return false;
  return gram_is_scalar(SignView(a), static_cast<long>(a.rows()));
}

bool is_weighing(const Matrix& a, std::size_t k) {
  require_square_ternary(a);
  if (k < 1 || k > a.rows())
    throw ContractError("weight k must satisfy 1 <= k <= n");
  return gram_is_scalar(SignView(a), static_cast<long>(k));
}

MatrixFilter hadamard_filter(std::size_t n) {
  return {"hadamard",
          [n](const PartialRows& pr) { return admit_weighing_row(pr, n); },
          [](const Matrix& a) { return is_hadamard(a); }};
}

MatrixFilter weighing_filter(std::size_t n, std::size_t k) {
  if (k < 1 || k > n) throw ContractError("weight k must satisfy 1 <= k <= n");
  return {"weighing",
          [k](const PartialRows& pr) { return admit_weighing_row(pr, k); },
          [k](const Matrix& a) { return is_weighing(a, k); }};
}

ClassCensus classify_hadamard(std::size_t n, EnumerationOptions options) {
  options.filter = hadamard_filter(n);
  return census(n, n, 3, CensusMode::stream, options);
}

ClassCensus classify_weighing(std::size_t n, std::size_t k,
                              EnumerationOptions options) {
  options.filter = weighing_filter(n, k);
  return census(n, n, 3, CensusMode::stream, options);
}

}  // namespace pmcanon
