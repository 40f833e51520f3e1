#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pmcanon/matrix.hpp"

namespace pmcanon {

using BigCount = boost::multiprecision::cpp_int;

inline constexpr std::uint64_t kDefaultNodeBudget = 2'000'000'000;

// How a completed candidate is accepted as canonical.
enum class CompletionCheck {
  // Lexicographic minimality by branch and bound; sound and complete.
  exact,
  // The six-condition criterion (is_canonical). Emits exactly the matrices
  // whose report verdict is true, canonical or not.
  theorem,
};

// First `rows` rows of a matrix under construction.
struct PartialRows {
  std::size_t rows;
  std::size_t m;
  unsigned p;
  std::span<const Digit> digits;  // rows * m entries, row-major

  Digit at(std::size_t i, std::size_t j) const noexcept {
    return digits[i * m + j];
  }
};

struct MatrixFilter {
  std::string name;
  // Called after each row is appended; returning false prunes the prefix. Must
  // only reject prefixes that no accepted matrix can extend.
  std::function<bool(const PartialRows&)> admit_prefix;
  std::function<bool(const Matrix&)> accept;
};

struct EnumerationOptions {
  std::optional<MatrixFilter> filter;
  std::uint64_t node_budget = kDefaultNodeBudget;
  unsigned workers = 1;
  CompletionCheck check = CompletionCheck::exact;
};

struct EnumerationStats {
  std::uint64_t nodes = 0;    // candidate rows examined
  std::uint64_t emitted = 0;  // matrices passed to the sink
};

using MatrixSink = std::function<void(const Matrix&)>;

// Depth-first generation over rows with nondecreasing row codes. Emits to
// `sink` in strictly ascending row-code order, identically for any worker
// count. Throws ResourceError (progress = matrices found so far) when the node
// budget runs out.
EnumerationStats enumerate_canonical(std::size_t n, std::size_t m, unsigned p,
                                     const EnumerationOptions& options,
                                     const MatrixSink& sink);

std::vector<Matrix> enumerate_canonical(std::size_t n, std::size_t m,
                                        unsigned p,
                                        const EnumerationOptions& options = {});

// Cross-validation path: every one of the p^(nm) matrices is tested. Throws
// ResourceError when n*m > 12.
std::vector<Matrix> enumerate_by_filter(
    std::size_t n, std::size_t m, unsigned p,
    CompletionCheck check = CompletionCheck::exact);

// Orbits of S_n x S_m on [p]^(n x m), by the cycle index. Throws ResourceError
// when n or m exceeds 12.
BigCount burnside_count(std::size_t n, std::size_t m, unsigned p);

enum class CensusMode { count_only, stream };

struct ClassCensus {
  std::size_t n = 0;
  std::size_t m = 0;
  unsigned p = 0;
  std::uint64_t count = 0;
  // Set when no filter is active.
  std::optional<BigCount> burnside;
  bool agree = true;
  std::vector<Matrix> representatives;  // stream mode only
  EnumerationStats stats;
};

// Enumerates and, without a filter, checks the count against burnside_count.
// Throws IntegrityError carrying both counts on disagreement unless
// `throw_on_disagreement` is false.
ClassCensus census(std::size_t n, std::size_t m, unsigned p, CensusMode mode,
                   const EnumerationOptions& options = {},
                   bool throw_on_disagreement = true);

// Writes matrices in the codec text format separated by single blank lines,
// closed by "# count=<N>".
class StreamWriter {
 public:
  explicit StreamWriter(std::ostream& out) : out_(out) {}

  void comment(const std::string& text);
  void write(const Matrix& a);
  void finish();

  std::uint64_t count() const noexcept { return count_; }

 private:
  std::ostream& out_;
  std::uint64_t count_ = 0;
};

}  // namespace pmcanon
