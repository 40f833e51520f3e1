#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pmcanon/errors.hpp"
#include "pmcanon/matrix.hpp"

namespace pmcanon {

struct RowTag {};
struct ColTag {};

// Ordered tuple of base-p numerals, each exactly `width` digits wide, most
// significant digit first. Values are never materialised as machine integers,
// so p^width may exceed 64 bits.
template <class Tag>
class Code {
 public:
  Code(std::size_t width, unsigned base, std::vector<Digit> digits)
      : width_(width), base_(base), digits_(std::move(digits)) {
    if (width_ == 0 || digits_.size() % width_ != 0)
      throw ContractError("code digits do not divide into width-sized elements");
    for (Digit d : digits_)
      if (d >= base_) throw RangeError("code digit exceeds base");
  }

  // Build from integer values; throws RangeError if a value exceeds p^width - 1.
  static Code from_values(std::size_t width, unsigned base,
                          std::span<const std::uint64_t> values) {
    std::vector<Digit> digits(values.size() * width);
    for (std::size_t k = 0; k < values.size(); ++k) {
      std::uint64_t v = values[k];
      for (std::size_t d = width; d-- > 0;) {
        digits[k * width + d] = static_cast<Digit>(v % base);
        v /= base;
      }
      if (v != 0) throw RangeError("code value exceeds base^width - 1");
    }
    return Code(width, base, std::move(digits));
  }

  std::size_t size() const noexcept { return digits_.size() / width_; }
  std::size_t width() const noexcept { return width_; }
  unsigned base() const noexcept { return base_; }

  std::span<const Digit> element(std::size_t k) const noexcept {
    return {digits_.data() + k * width_, width_};
  }
  std::span<const Digit> digits() const noexcept { return digits_; }

  // Integer value of element k when it fits in 64 bits.
  std::optional<std::uint64_t> value(std::size_t k) const noexcept;

  // Decimal when the value fits 64 bits, otherwise the base-p digits joined by
  // '.' with a "_p" suffix, e.g. "1.0.3.2_4".
  std::string render(std::size_t k) const;

  // Elements rendered and separated by single spaces.
  std::string render() const;

  friend bool operator==(const Code&, const Code&) = default;

 private:
  std::size_t width_;
  unsigned base_;
  std::vector<Digit> digits_;
};

using RowCode = Code<RowTag>;  // r(A): n elements of width m
using ColCode = Code<ColTag>;  // c(A): m elements of width n

RowCode encode_rows(const Matrix& a);
ColCode encode_cols(const Matrix& a);

// Inverse of encode_rows.
Matrix decode_rows(const RowCode& code);

// Lexicographic order on tuples. Elements share a width, so comparing the
// flat digit sequences is the same as comparing element values in order.
// Throws ContractError unless both codes have the same length, width and base.
template <class Tag>
std::strong_ordering lex_compare(const Code<Tag>& a, const Code<Tag>& b) {
  if (a.size() != b.size() || a.width() != b.width() || a.base() != b.base())
    throw ContractError("lex_compare on codes of different shape");
  auto da = a.digits();
  auto db = b.digits();
  return std::lexicographical_compare_three_way(da.begin(), da.end(),
                                                db.begin(), db.end());
}

// Same order restricted to two equal-width digit strings.
inline std::strong_ordering compare_digits(std::span<const Digit> a,
                                           std::span<const Digit> b) noexcept {
  return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(),
                                                b.end());
}

// True iff the elements are nondecreasing.
template <class Tag>
bool is_nondecreasing(const Code<Tag>& c) {
  for (std::size_t k = 1; k < c.size(); ++k)
    if (compare_digits(c.element(k - 1), c.element(k)) > 0) return false;
  return true;
}

// ---- Matrix text format --------------------------------------------------
//
//   n m p
//   d d ... d      (n lines, m digits each)
//
// '#' lines and blank lines before the header are skipped.

// Reads one matrix, skipping leading '#'/blank lines. Returns nullopt at a
// clean end of input. Throws ParseError on malformed text and RangeError on a
// digit outside [0, p-1].
std::optional<Matrix> read_matrix(std::istream& in);

// Whole input must hold exactly one matrix (trailing '#'/blank lines allowed).
Matrix parse_matrix(const std::string& text);

// Every matrix in a stream of blank-line separated matrices.
std::vector<Matrix> parse_matrices(const std::string& text);

std::string format_matrix(const Matrix& a);

}  // namespace pmcanon
