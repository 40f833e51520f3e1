#include "pmcanon/equivalence.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "pmcanon/codec.hpp"
#include "pmcanon/errors.hpp"

namespace pmcanon {

Permutation::Permutation(std::vector<std::uint32_t> image)
    : image_(std::move(image)) {
  std::vector<bool> seen(image_.size(), false);
  for (auto v : image_) {
    if (v >= image_.size() || seen[v])
      throw ContractError("permutation image is not a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t k) {
  std::vector<std::uint32_t> img(k);
  std::iota(img.begin(), img.end(), 0u);
  return Permutation(std::move(img));
}

Permutation Permutation::transposition(std::size_t k, std::size_t a,
                                       std::size_t b) {
  if (a >= k || b >= k || a == b)
    throw ContractError("transposition needs two distinct indices below k");
  auto t = identity(k);
  std::swap(t.image_[a], t.image_[b]);
  return t;
}

Permutation Permutation::inverse() const {
  std::vector<std::uint32_t> inv(image_.size());
  for (std::uint32_t i = 0; i < image_.size(); ++i) inv[image_[i]] = i;
  return Permutation(std::move(inv));
}

bool Permutation::is_identity() const noexcept {
  for (std::uint32_t i = 0; i < image_.size(); ++i)
    if (image_[i] != i) return false;
  return true;
}

Permutation compose(const Permutation& after, const Permutation& first) {
  if (after.size() != first.size())
    throw ContractError("composing permutations of different sizes");
  std::vector<std::uint32_t> img(first.size());
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = after(first(i));
  return Permutation(std::move(img));
}

PermPair compose(const PermPair& after, const PermPair& first) {
  return {compose(after.rows, first.rows), compose(after.cols, first.cols)};
}

Matrix apply(const Matrix& a, const PermPair& pp) {
  if (pp.rows.size() != a.rows() || pp.cols.size() != a.cols())
    throw ContractError("permutation sizes do not match the matrix");
  const std::size_t m = a.cols();
  std::vector<Digit> out(a.rows() * m);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < m; ++j) out[pp.rows(i) * m + pp.cols(j)] = a(i, j);
  return Matrix(a.rows(), m, a.base(), std::move(out));
}

namespace {

// Column order `order` (order[k] = source column placed at k) with rows sorted.
// Writes the row-major digits to `out` and the source row of each output row to
// `row_src`.
void arrange(const Matrix& a, const std::vector<std::uint32_t>& order,
             std::vector<Digit>& scratch, std::vector<std::uint32_t>& row_src,
             std::vector<Digit>& out) {
  const std::size_t n = a.rows();
  const std::size_t m = a.cols();
  scratch.resize(n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < m; ++k) scratch[i * m + k] = a(i, order[k]);
  row_src.resize(n);
  std::iota(row_src.begin(), row_src.end(), 0u);
  std::stable_sort(row_src.begin(), row_src.end(),
                   [&](std::uint32_t x, std::uint32_t y) {
                     return std::lexicographical_compare(
                         scratch.begin() + x * m, scratch.begin() + (x + 1) * m,
                         scratch.begin() + y * m, scratch.begin() + (y + 1) * m);
                   });
  out.resize(n * m);
  for (std::size_t r = 0; r < n; ++r)
    std::copy_n(scratch.begin() + row_src[r] * m, m, out.begin() + r * m);
}

PermPair witness_from(const std::vector<std::uint32_t>& row_src,
                      const std::vector<std::uint32_t>& col_order) {
  std::vector<std::uint32_t> rows(row_src.size()), cols(col_order.size());
  for (std::uint32_t r = 0; r < row_src.size(); ++r) rows[row_src[r]] = r;
  for (std::uint32_t k = 0; k < col_order.size(); ++k) cols[col_order[k]] = k;
  return {Permutation(std::move(rows)), Permutation(std::move(cols))};
}

// Row-by-row branch and bound.
//
// At depth d the rows 0..d-1 of the output are fixed and the output columns
// form an ordered partition into cells; columns inside a cell agree on every
// placed row and are still interchangeable. Placing a source row at depth d and
// sorting each cell by that row's digits gives the least possible row d for that
// choice, and refines the partition. Only source rows reaching the least
// string at a node can lead to the minimum, so others are cut immediately; the
// remaining candidates are compared against the incumbent and cut if larger.
class RowSearch {
 public:
  RowSearch(const Matrix& a, SearchStats* stats) : a_(a), stats_(stats) {
    const std::size_t n = a.rows();
    // Identical source rows give identical subtrees; branch on one of each.
    std::map<std::vector<Digit>, std::uint32_t> first_of;
    group_.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) {
      auto r = a.row(i);
      auto [it, inserted] =
          first_of.emplace(std::vector<Digit>(r.begin(), r.end()), i);
      group_[i] = it->second;
    }
  }

  // Early-exit mode: incumbent seeded with `a` itself; returns as soon as a
  // strictly smaller arrangement exists.
  bool beaten_by_some_arrangement() {
    auto e = a_.entries();
    best_.assign(e.begin(), e.end());
    have_best_ = true;
    early_exit_ = true;
    run();
    return improved_;
  }

  CanonResult minimum() {
    have_best_ = false;
    early_exit_ = false;
    run();
    return {Matrix(a_.rows(), a_.cols(), a_.base(), best_),
            witness_from(best_row_src_, best_col_order_)};
  }

 private:
  void run() {
    const std::size_t n = a_.rows();
    const std::size_t m = a_.cols();
    used_.assign(n, false);
    current_.assign(n * m, 0);
    row_src_.assign(n, 0);
    std::vector<std::uint32_t> order(m);
    std::iota(order.begin(), order.end(), 0u);
    std::vector<std::uint32_t> cell_end{static_cast<std::uint32_t>(m)};
    dfs(0, order, cell_end, have_best_ ? Cmp::equal : Cmp::less);
  }

  enum class Cmp { less, equal };

  // Returns true to abort the whole search (early-exit mode hit).
  bool dfs(std::size_t depth, const std::vector<std::uint32_t>& order,
           const std::vector<std::uint32_t>& cell_end, Cmp state) {
    if (stats_) ++stats_->nodes;
    const std::size_t n = a_.rows();
    const std::size_t m = a_.cols();
    if (depth == n) {
      if (state == Cmp::less) {
        improved_ = true;
        if (early_exit_) return true;
        best_ = current_;
        best_row_src_ = row_src_;
        best_col_order_ = order;
        have_best_ = true;
        ++version_;
      }
      return false;
    }

    struct Candidate {
      std::uint32_t row;
      std::vector<std::uint32_t> order;
      std::vector<Digit> digits;
    };
    std::vector<Candidate> cands;
    std::vector<Digit> least;
    for (std::uint32_t i = 0; i < n; ++i) {
      if (used_[i] || group_rep_used(i)) continue;
      Candidate c{i, order, {}};
      std::uint32_t begin = 0;
      for (auto end : cell_end) {
        std::stable_sort(c.order.begin() + begin, c.order.begin() + end,
                         [&](std::uint32_t x, std::uint32_t y) {
                           return a_(i, x) < a_(i, y);
                         });
        begin = end;
      }
      c.digits.resize(m);
      for (std::size_t k = 0; k < m; ++k) c.digits[k] = a_(i, c.order[k]);
      if (cands.empty() || c.digits < least) {
        least = c.digits;
        cands.clear();
        cands.push_back(std::move(c));
      } else if (c.digits == least) {
        cands.push_back(std::move(c));
      }
    }

    for (auto& c : cands) {
      Cmp next = state;
      if (state == Cmp::equal) {
        auto inc = std::span<const Digit>(best_).subspan(depth * m, m);
        auto ord = compare_digits(c.digits, inc);
        if (ord > 0) continue;
        if (ord < 0) next = Cmp::less;
      }
      std::vector<std::uint32_t> refined;
      refined.reserve(cell_end.size() + m);
      std::uint32_t begin = 0;
      for (auto end : cell_end) {
        for (std::uint32_t k = begin + 1; k < end; ++k)
          if (c.digits[k] != c.digits[k - 1]) refined.push_back(k);
        refined.push_back(end);
        begin = end;
      }
      std::copy(c.digits.begin(), c.digits.end(), current_.begin() + depth * m);
      row_src_[depth] = c.row;
      used_[c.row] = true;
      const auto before = version_;
      const bool abort = dfs(depth + 1, c.order, refined, next);
      used_[c.row] = false;
      if (abort) return true;
      // A new incumbent found below extends the current prefix.
      if (version_ != before) state = Cmp::equal;
    }
    return false;
  }

  // True if i is not the lowest unused row among its identical copies.
  bool group_rep_used(std::uint32_t i) const {
    for (std::uint32_t k = 0; k < i; ++k)
      if (!used_[k] && group_[k] == group_[i]) return true;
    return false;
  }

  const Matrix& a_;
  SearchStats* stats_;
  std::vector<std::uint32_t> group_;
  std::vector<bool> used_;
  std::vector<Digit> current_;
  std::vector<std::uint32_t> row_src_;
  std::vector<Digit> best_;
  std::vector<std::uint32_t> best_row_src_;
  std::vector<std::uint32_t> best_col_order_;
  bool have_best_ = false;
  bool early_exit_ = false;
  bool improved_ = false;
  std::uint64_t version_ = 0;
};

}  // namespace

CanonResult canonical_form(const Matrix& a, std::size_t max_cols) {
  if (a.cols() > max_cols)
    throw ResourceError("canonical_form: m = " + std::to_string(a.cols()) +
                        " exceeds the factorial guard (" +
                        std::to_string(max_cols) +
                        "); use the pruned search instead");
  std::vector<std::uint32_t> order(a.cols());
  std::iota(order.begin(), order.end(), 0u);
  std::vector<Digit> scratch, digits, best;
  std::vector<std::uint32_t> row_src, best_rows, best_cols;
  do {
    arrange(a, order, scratch, row_src, digits);
    if (best.empty() || digits < best) {
      best = digits;
      best_rows = row_src;
      best_cols = order;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return {Matrix(a.rows(), a.cols(), a.base(), std::move(best)),
          witness_from(best_rows, best_cols)};
}

CanonResult pruned_canonical_form(const Matrix& a, SearchStats* stats) {
  return RowSearch(a, stats).minimum();
}

bool is_lex_minimal(const Matrix& a, SearchStats* stats) {
  return !RowSearch(a, stats).beaten_by_some_arrangement();
}

std::optional<PermPair> equivalent(const Matrix& a, const Matrix& b) {
  if (!a.same_shape(b))
    throw ContractError("equivalent: matrices differ in shape or base");
  auto ca = pruned_canonical_form(a);
  auto cb = pruned_canonical_form(b);
  if (ca.canonical != cb.canonical) return std::nullopt;
  return compose(cb.witness.inverse(), ca.witness);
}

std::uint64_t stabilizer_order(const Matrix& a) {
  if (a.cols() > kDefaultFactorialGuard)
    throw ResourceError("stabilizer_order: m exceeds the factorial guard");
  const std::size_t n = a.rows();
  const std::size_t m = a.cols();
  // For a fixed column permutation the row permutations that restore `a`
  // exist iff the row multisets agree, and then number prod(mult!).
  std::map<std::vector<Digit>, std::uint64_t> base_rows;
  for (std::size_t i = 0; i < n; ++i) {
    auto r = a.row(i);
    ++base_rows[std::vector<Digit>(r.begin(), r.end())];
  }
  std::uint64_t row_factor = 1;
  for (const auto& [row, mult] : base_rows)
    for (std::uint64_t k = 2; k <= mult; ++k) row_factor *= k;

  std::vector<std::uint32_t> order(m);
  std::iota(order.begin(), order.end(), 0u);
  std::uint64_t count = 0;
  std::vector<Digit> buf(m);
  do {
    std::map<std::vector<Digit>, std::uint64_t> rows;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < m; ++k) buf[k] = a(i, order[k]);
      ++rows[buf];
    }
    if (rows == base_rows) count += row_factor;
  } while (std::next_permutation(order.begin(), order.end()));
  return count;
}

std::uint64_t orbit_size(const Matrix& a) {
  std::uint64_t group = 1;
  for (std::uint64_t k = 2; k <= a.rows(); ++k)
    if (__builtin_mul_overflow(group, k, &group))
      throw ResourceError("orbit_size: n! m! overflows 64 bits");
  for (std::uint64_t k = 2; k <= a.cols(); ++k)
    if (__builtin_mul_overflow(group, k, &group))
      throw ResourceError("orbit_size: n! m! overflows 64 bits");
  return group / stabilizer_order(a);
}

}  // namespace pmcanon
