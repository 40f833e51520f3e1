#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pmcanon/matrix.hpp"

namespace pmcanon {

// Bijection on {0, ..., k-1}. image()[i] is where index i is sent.
class Permutation {
 public:
  // Throws ContractError if `image` is not a bijection.
  explicit Permutation(std::vector<std::uint32_t> image);

  static Permutation identity(std::size_t k);
  static Permutation transposition(std::size_t k, std::size_t a, std::size_t b);

  std::size_t size() const noexcept { return image_.size(); }
  std::uint32_t operator()(std::size_t i) const noexcept { return image_[i]; }
  const std::vector<std::uint32_t>& image() const noexcept { return image_; }

  Permutation inverse() const;
  bool is_identity() const noexcept;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::uint32_t> image_;
};

// (after ∘ first)(i) = after(first(i)).
Permutation compose(const Permutation& after, const Permutation& first);

// Row and column permutation, source index -> destination index.
struct PermPair {
  Permutation rows;
  Permutation cols;

  static PermPair identity(std::size_t n, std::size_t m) {
    return {Permutation::identity(n), Permutation::identity(m)};
  }
  PermPair inverse() const { return {rows.inverse(), cols.inverse()}; }
  bool is_identity() const noexcept {
    return rows.is_identity() && cols.is_identity();
  }
  friend bool operator==(const PermPair&, const PermPair&) = default;
};

// Componentwise composition; apply(apply(A, q), r) == apply(A, compose(r, q)).
PermPair compose(const PermPair& after, const PermPair& first);

// B(rows(i), cols(j)) = A(i, j). Throws ContractError on a size mismatch.
Matrix apply(const Matrix& a, const PermPair& pp);

struct CanonResult {
  Matrix canonical;
  PermPair witness;  // apply(input, witness) == canonical
};

// Node counter shared by the search routines.
struct SearchStats {
  std::uint64_t nodes = 0;
};

inline constexpr std::size_t kDefaultFactorialGuard = 10;

// Exhaustive: every column order, rows sorted ascending for each. Throws
// ResourceError when m exceeds `max_cols`.
CanonResult canonical_form(const Matrix& a,
                           std::size_t max_cols = kDefaultFactorialGuard);

// Branch and bound producing the same result as canonical_form at any size.
CanonResult pruned_canonical_form(const Matrix& a, SearchStats* stats = nullptr);

// True iff a == pruned_canonical_form(a).canonical; stops at the first
// arrangement that beats `a`.
bool is_lex_minimal(const Matrix& a, SearchStats* stats = nullptr);

// Witness w with apply(a, w) == b, or nullopt when the matrices lie in
// different classes. Throws ContractError unless the shapes and bases match.
std::optional<PermPair> equivalent(const Matrix& a, const Matrix& b);

// Number of pairs (X, Y) with X a Y == a. Throws ResourceError for m > 10.
std::uint64_t stabilizer_order(const Matrix& a);

// n! m! / stabilizer_order(a). Throws ResourceError when n! m! overflows 64
// bits or m > 10.
std::uint64_t orbit_size(const Matrix& a);

}  // namespace pmcanon
