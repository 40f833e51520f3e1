#include "pmcanon/enumeration.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <numeric>
#include <ostream>
#include <thread>

#include "pmcanon/canonicity.hpp"
#include "pmcanon/codec.hpp"
#include "pmcanon/equivalence.hpp"
#include "pmcanon/errors.hpp"

namespace pmcanon {

namespace {

// Steps `row` to the next value in base p; false after the largest value.
bool increment(std::vector<Digit>& row, unsigned p) {
  for (std::size_t j = row.size(); j-- > 0;) {
    if (row[j] + 1u < p) {
      ++row[j];
      return true;
    }
    row[j] = 0;
  }
  return false;
}

struct Shared {
  std::uint64_t budget;
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<std::uint64_t> found{0};

  void tick() {
    if (nodes.fetch_add(1, std::memory_order_relaxed) + 1 > budget)
      throw ResourceError("node budget of " + std::to_string(budget) +
                              " exhausted after " +
                              std::to_string(found.load()) + " matrices",
                          found.load());
  }
};

// One worker's search below a fixed first row.
class RowGenerator {
 public:
  RowGenerator(std::size_t n, std::size_t m, unsigned p,
               const EnumerationOptions& opt, Shared& shared)
      : n_(n), m_(m), p_(p), opt_(opt), shared_(shared),
        digits_(n * m, 0), tied_(n + 1, std::vector<char>(m > 0 ? m - 1 : 0, 1)) {}

  // First-row prunes; also used to build the work list.
  bool admit_first(const std::vector<Digit>& row) const {
    // Zeros then nonzeros.
    auto first_nz = std::find_if(row.begin(), row.end(),
                                 [](Digit d) { return d != 0; });
    if (std::any_of(first_nz, row.end(), [](Digit d) { return d == 0; }))
      return false;
    // Semi-canonical columns force the first row to be nondecreasing.
    if (opt_.check == CompletionCheck::exact &&
        !std::is_sorted(row.begin(), row.end()))
      return false;
    return true;
  }

  template <class Emit>
  void run(const std::vector<Digit>& row0, Emit&& emit) {
    std::copy(row0.begin(), row0.end(), digits_.begin());
    s_ = nonzero_count(row0);
    if (!update_ties(0)) return;
    if (!admit_filter(1)) return;
    descend(1, emit);
  }

 private:
  // Column-prefix order for adjacent columns (exact mode only): while columns
  // j and j+1 agree on rows 0..depth-1, row `depth` must not put a larger digit
  // in column j.
  bool update_ties(std::size_t depth) {
    auto& prev = tied_[depth];
    auto& next = tied_[depth + 1];
    const Digit* row = digits_.data() + depth * m_;
    for (std::size_t j = 0; j + 1 < m_; ++j) {
      if (prev[j]) {
        if (opt_.check == CompletionCheck::exact && row[j] > row[j + 1])
          return false;
        next[j] = row[j] == row[j + 1];
      } else {
        next[j] = 0;
      }
    }
    return true;
  }

  bool admit_filter(std::size_t rows) const {
    if (!opt_.filter || !opt_.filter->admit_prefix) return true;
    return opt_.filter->admit_prefix(
        PartialRows{rows, m_, p_, std::span<const Digit>(digits_.data(), rows * m_)});
  }

  template <class Emit>
  void descend(std::size_t depth, Emit& emit) {
    if (depth == n_) {
      complete(emit);
      return;
    }
    Digit* row = digits_.data() + depth * m_;
    const Digit* prev = row - m_;
    std::vector<Digit> cand(prev, prev + m_);
    do {
      shared_.tick();
      if (nonzero_count(cand) < s_) continue;
      std::copy(cand.begin(), cand.end(), row);
      if (!update_ties(depth)) continue;
      if (!admit_filter(depth + 1)) continue;
      descend(depth + 1, emit);
    } while (increment(cand, p_));
  }

  template <class Emit>
  void complete(Emit& emit) {
    Matrix a(n_, m_, p_, digits_);
    if (opt_.filter && opt_.filter->accept && !opt_.filter->accept(a)) return;
    const bool ok = opt_.check == CompletionCheck::exact
                        ? is_lex_minimal(a)
                        : is_canonical(a).verdict;
    if (!ok) return;
    shared_.found.fetch_add(1, std::memory_order_relaxed);
    emit(std::move(a));
  }

  std::size_t n_, m_;
  unsigned p_;
  const EnumerationOptions& opt_;
  Shared& shared_;
  std::vector<Digit> digits_;
  std::vector<std::vector<char>> tied_;
  std::size_t s_ = 0;
};

}  // namespace

EnumerationStats enumerate_canonical(std::size_t n, std::size_t m, unsigned p,
                                     const EnumerationOptions& options,
                                     const MatrixSink& sink) {
  // Validates the shape.
  (void)Matrix(n, m, p);
  if (options.workers == 0) throw ContractError("workers must be at least 1");
  Shared shared;
  shared.budget = options.node_budget;

  std::vector<std::vector<Digit>> first_rows;
  {
    RowGenerator probe(n, m, p, options, shared);
    std::vector<Digit> row(m, 0);
    do {
      shared.tick();
      if (probe.admit_first(row)) first_rows.push_back(row);
    } while (increment(row, p));
  }

  EnumerationStats stats;
  const unsigned workers =
      std::max(1u, std::min<unsigned>(options.workers,
                                      static_cast<unsigned>(first_rows.size())));
  if (workers <= 1) {
    RowGenerator gen(n, m, p, options, shared);
    for (const auto& row : first_rows)
      gen.run(row, [&](Matrix&& a) {
        ++stats.emitted;
        sink(a);
      });
  } else {
    // Partitioned by first row; results are merged in first-row order, which is
    // row-code order.
    std::vector<std::vector<Matrix>> parts(first_rows.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        try {
          RowGenerator gen(n, m, p, options, shared);
          for (std::size_t k; (k = next.fetch_add(1)) < first_rows.size();) {
            {
              std::lock_guard lock(failure_mu);
              if (failure) return;
            }
            gen.run(first_rows[k],
                    [&](Matrix&& a) { parts[k].push_back(std::move(a)); });
          }
        } catch (...) {
          std::lock_guard lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    for (const auto& part : parts)
      for (const auto& a : part) {
        ++stats.emitted;
        sink(a);
      }
  }
  stats.nodes = shared.nodes.load();
  return stats;
}

std::vector<Matrix> enumerate_canonical(std::size_t n, std::size_t m,
                                        unsigned p,
                                        const EnumerationOptions& options) {
  std::vector<Matrix> out;
  enumerate_canonical(n, m, p, options,
                      [&](const Matrix& a) { out.push_back(a); });
  return out;
}

std::vector<Matrix> enumerate_by_filter(std::size_t n, std::size_t m,
                                        unsigned p, CompletionCheck check) {
  if (n * m > 12)
    throw ResourceError("filter mode is limited to n*m <= 12");
  Matrix a(n, m, p);
  std::vector<Digit> e(n * m, 0);
  std::vector<Matrix> out;
  do {
    Matrix b(n, m, p, e);
    const bool ok = check == CompletionCheck::exact ? is_lex_minimal(b)
                                                    : is_canonical(b).verdict;
    if (ok) out.push_back(std::move(b));
  } while (increment(e, p));
  return out;
}

namespace {

void partitions(std::size_t n, std::size_t max_part, std::vector<std::size_t>& cur,
                std::vector<std::vector<std::size_t>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (std::size_t k = std::min(n, max_part); k >= 1; --k) {
    cur.push_back(k);
    partitions(n - k, k, cur, out);
    cur.pop_back();
  }
}

BigCount factorial(std::size_t n) {
  BigCount f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= k;
  return f;
}

// Permutations of n points with the given cycle type.
BigCount class_size(const std::vector<std::size_t>& cycle_type, std::size_t n) {
  BigCount denom = 1;
  std::size_t run = 0;
  for (std::size_t i = 0; i < cycle_type.size(); ++i) {
    denom *= cycle_type[i];
    ++run;
    if (i + 1 == cycle_type.size() || cycle_type[i + 1] != cycle_type[i]) {
      denom *= factorial(run);
      run = 0;
    }
  }
  return factorial(n) / denom;
}

}  // namespace

BigCount burnside_count(std::size_t n, std::size_t m, unsigned p) {
  if (n == 0 || m == 0 || p < 2)
    throw ContractError("burnside_count needs n, m >= 1 and p >= 2");
  if (n > 12 || m > 12)
    throw ResourceError("burnside_count is limited to n, m <= 12");
  std::vector<std::vector<std::size_t>> rows, cols;
  std::vector<std::size_t> cur;
  partitions(n, n, cur, rows);
  partitions(m, m, cur, cols);
  BigCount total = 0;
  for (const auto& lr : rows) {
    const BigCount ra = class_size(lr, n);
    for (const auto& lc : cols) {
      // A cell cycle of the product permutation has length lcm(a, b); a pair of
      // cycles of lengths a and b splits into gcd(a, b) of them.
      unsigned exponent = 0;
      for (auto a : lr)
        for (auto b : lc) exponent += static_cast<unsigned>(std::gcd(a, b));
      total += ra * class_size(lc, m) * boost::multiprecision::pow(BigCount(p), exponent);
    }
  }
  const BigCount group = factorial(n) * factorial(m);
  if (total % group != 0)
    throw IntegrityError("Burnside sum not divisible by the group order");
  return total / group;
}

ClassCensus census(std::size_t n, std::size_t m, unsigned p, CensusMode mode,
                   const EnumerationOptions& options,
                   bool throw_on_disagreement) {
  ClassCensus c;
  c.n = n;
  c.m = m;
  c.p = p;
  c.stats = enumerate_canonical(n, m, p, options, [&](const Matrix& a) {
    if (mode == CensusMode::stream) c.representatives.push_back(a);
  });
  c.count = c.stats.emitted;
  if (!options.filter) {
    c.burnside = burnside_count(n, m, p);
    c.agree = *c.burnside == c.count;
    if (!c.agree && throw_on_disagreement)
      throw IntegrityError("enumerated count disagrees with Burnside count",
                           std::to_string(c.count), c.burnside->str());
  }
  return c;
}

void StreamWriter::comment(const std::string& text) {
  out_ << "# " << text << '\n';
}

void StreamWriter::write(const Matrix& a) {
  if (count_ > 0) out_ << '\n';
  out_ << format_matrix(a);
  ++count_;
}

void StreamWriter::finish() {
  if (count_ > 0) out_ << '\n';
  out_ << "# count=" << count_ << '\n';
}

}  // namespace pmcanon
