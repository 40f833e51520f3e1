#include "pmcanon/canonicity.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "pmcanon/codec.hpp"
#include "pmcanon/errors.hpp"

namespace pmcanon {

RowStats row_stats(const Matrix& a) {
  const std::size_t n = a.rows();
  RowStats st;
  st.nu.resize(n);
  st.zeta.resize(n);
  st.zclass_start.resize(n);
  struct Class {
    std::size_t first;
    std::size_t count;
  };
  std::map<std::vector<Digit>, Class> classes;
  std::vector<std::map<std::vector<Digit>, Class>::iterator> of(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto r = a.row(i);
    st.nu[i] = nonzero_count(r);
    auto [it, inserted] =
        classes.emplace(std::vector<Digit>(r.begin(), r.end()), Class{i, 0});
    ++it->second.count;
    of[i] = it;
  }
  for (std::size_t i = 0; i < n; ++i) {
    st.zeta[i] = of[i]->second.count;
    st.zclass_start[i] = of[i]->second.first;
  }
  return st;
}

bool is_semi_canonical(const Matrix& a) {
  return is_nondecreasing(encode_rows(a)) && is_nondecreasing(encode_cols(a));
}

namespace {

// Zeros then nonzero digits, nondecreasing throughout. Returns the number of
// leading zeros or nullopt.
std::optional<std::size_t> zeros_then_nondecreasing(
    const std::vector<Digit>& v) {
  for (std::size_t k = 1; k < v.size(); ++k)
    if (v[k - 1] > v[k]) return std::nullopt;
  return static_cast<std::size_t>(
      std::find_if(v.begin(), v.end(), [](Digit d) { return d != 0; }) -
      v.begin());
}

bool rows_equal(const Matrix& a, std::size_t i, std::size_t k) {
  auto x = a.row(i);
  auto y = a.row(k);
  return std::equal(x.begin(), x.end(), y.begin());
}

// The three-step construction without precondition checks; also used by
// is_canonical on inputs whose rows are not sorted.
Matrix transform_unchecked(const Matrix& a, std::size_t i, std::size_t s) {
  const std::size_t n = a.rows();
  const std::size_t m = a.cols();

  std::vector<std::size_t> row_order;
  for (std::size_t k = 0; k < n; ++k)
    if (rows_equal(a, k, i)) row_order.push_back(k);
  for (std::size_t k = 0; k < n; ++k)
    if (!rows_equal(a, k, i)) row_order.push_back(k);

  // Columns of A' are those of A; row 0 of A' is row i of A.
  std::vector<std::size_t> col_order;
  if (s == m) {
    col_order.resize(m);
    std::iota(col_order.begin(), col_order.end(), 0);
  } else {
    for (std::size_t j = 0; j < m; ++j)
      if (a(i, j) == 0) col_order.push_back(j);
    for (std::size_t j = 0; j < m; ++j)
      if (a(i, j) != 0) col_order.push_back(j);
  }

  auto column_less = [&](std::size_t x, std::size_t y) {
    for (std::size_t r : row_order) {
      if (a(r, x) != a(r, y)) return a(r, x) < a(r, y);
    }
    return false;
  };
  std::stable_sort(col_order.end() - static_cast<std::ptrdiff_t>(s),
                   col_order.end(), column_less);

  std::vector<Digit> out;
  out.reserve(n * m);
  for (std::size_t r : row_order)
    for (std::size_t j : col_order) out.push_back(a(r, j));
  return Matrix(n, m, a.base(), std::move(out));
}

std::string verb(ConditionStatus s) {
  switch (s) {
    case ConditionStatus::pass:
      return "pass";
    case ConditionStatus::fail:
      return "fail";
    case ConditionStatus::not_applicable:
      return "n/a";
  }
  return "n/a";
}

ConditionOutcome pass(std::string why) {
  return {ConditionStatus::pass, std::move(why)};
}
ConditionOutcome fail(std::string why) {
  return {ConditionStatus::fail, std::move(why)};
}
ConditionOutcome na(std::string why) {
  return {ConditionStatus::not_applicable, std::move(why)};
}

}  // namespace

FirstRowColStructure first_row_col_structure(const Matrix& a) {
  if (!is_semi_canonical(a))
    throw ContractError("first_row_col_structure: matrix is not semi-canonical");
  auto r = a.row(0);
  std::vector<Digit> row(r.begin(), r.end());
  std::vector<Digit> col(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) col[i] = a(i, 0);
  auto row_zeros = zeros_then_nondecreasing(row);
  auto col_zeros = zeros_then_nondecreasing(col);
  if (!row_zeros || !col_zeros)
    throw IntegrityError(
        "semi-canonical matrix without the zeros-then-nondecreasing first "
        "row/column");
  return {a.cols() - *row_zeros, *col_zeros};
}

Matrix condition5_transform(const Matrix& a, std::size_t i) {
  const auto st = row_stats(a);
  const std::size_t n = a.rows();
  if (!is_nondecreasing(encode_rows(a)))
    throw ContractError("condition5_transform: rows are not sorted");
  const std::size_t t = st.zeta[0];
  if (t >= n) throw ContractError("condition5_transform: requires zeta_1 < n");
  if (i < t || i >= n)
    throw ContractError("condition5_transform: row index outside (t, n]");
  if (st.nu[i] != st.nu[0])
    throw ContractError("condition5_transform: row has nu_i != nu_1");
  return transform_unchecked(a, i, st.nu[0]);
}

CanonicityReport is_canonical(const Matrix& a) {
  const std::size_t n = a.rows();
  const std::size_t m = a.cols();
  const auto rc = encode_rows(a);
  const auto cc = encode_cols(a);
  const auto st = row_stats(a);
  const std::size_t s = st.nu[0];
  const std::size_t t = st.zeta[0];

  CanonicityReport rep;
  auto& c = rep.conditions;

  // 1. x_1 <= ... <= x_n (each x_i <= p^m - 1 by construction).
  {
    std::size_t bad = 0;
    for (std::size_t k = 1; k < n && !bad; ++k)
      if (compare_digits(rc.element(k - 1), rc.element(k)) > 0) bad = k;
    c[0] = bad ? fail("x_" + std::to_string(bad) + " = " + rc.render(bad - 1) +
                      " > x_" + std::to_string(bad + 1) + " = " +
                      rc.render(bad))
               : pass("row codes nondecreasing");
  }

  // 2. (p^s - 1)/(p - 1) <= x_1 <= p^s - 1, i.e. the first m - s digits of row 1
  // are zero and the last s digits are >= 1...1.
  {
    auto row = rc.element(0);
    std::vector<Digit> low(m, 0);
    std::fill(low.end() - static_cast<std::ptrdiff_t>(s), low.end(), Digit{1});
    const bool upper = std::all_of(row.begin(), row.begin() + (m - s),
                                   [](Digit d) { return d == 0; });
    const bool lower = compare_digits(low, row) <= 0;
    const std::string span = "s = " + std::to_string(s) + ", x_1 = " +
                             rc.render(0);
    if (upper && lower)
      c[1] = pass(span + " within [(p^s-1)/(p-1), p^s-1]");
    else
      c[1] = fail(span + (upper ? " below (p^s-1)/(p-1)" : " above p^s-1"));
  }

  // 3. Last s column codes nondecreasing.
  if (s > 1) {
    std::size_t bad = 0;
    for (std::size_t j = m - s + 1; j < m && !bad; ++j)
      if (compare_digits(cc.element(j - 1), cc.element(j)) > 0) bad = j;
    c[2] = bad ? fail("y_" + std::to_string(bad) + " = " + cc.render(bad - 1) +
                      " > y_" + std::to_string(bad + 1) + " = " +
                      cc.render(bad))
               : pass("last " + std::to_string(s) +
                      " column codes nondecreasing");
  } else {
    c[2] = na("s = " + std::to_string(s) + " <= 1");
  }

  // 4. nu_1 <= nu_i.
  {
    std::size_t bad = 0;
    for (std::size_t k = 1; k < n && !bad; ++k)
      if (st.nu[k] < s) bad = k + 1;
    c[3] = bad ? fail("nu_" + std::to_string(bad) + " = " +
                      std::to_string(st.nu[bad - 1]) + " < nu_1 = " +
                      std::to_string(s))
               : pass("nu_1 = " + std::to_string(s) + " is minimal");
  }

  // 5. For every row block outside Z_1 with nu = s: r(A) <= r(A''').
  if (t < n) {
    std::size_t checked = 0;
    std::optional<std::size_t> bad;
    for (std::size_t i = 0; i < n; ++i) {
      if (rows_equal(a, i, 0) || st.nu[i] != s || st.zclass_start[i] != i)
        continue;
      ++checked;
      auto a3 = transform_unchecked(a, i, s);
      if (!bad && lex_compare(encode_rows(a3), rc) < 0) {
        bad = i;
        rep.failing_witness = std::move(a3);
      }
    }
    if (checked == 0)
      c[4] = na("no row block outside Z_1 with nu = " + std::to_string(s));
    else if (bad)
      c[4] = fail("block at row " + std::to_string(*bad + 1) +
                  " gives r(A''') = " +
                  encode_rows(*rep.failing_witness).render() + " < r(A)");
    else
      c[4] = pass(std::to_string(checked) + " row block(s) checked");
  } else {
    c[4] = na("t = n = " + std::to_string(n));
  }

  // 6. Lower-left submatrix canonical.
  if (t >= 1 && t < n && s < m) {
    auto b = a.submatrix(t, n - t, 0, m - s);
    const bool ok = is_canonical(b).verdict;
    const std::string what = "submatrix rows " + std::to_string(t + 1) + ".." +
                             std::to_string(n) + ", cols 1.." +
                             std::to_string(m - s);
    if (ok) {
      c[5] = pass(what + " canonical");
    } else {
      c[5] = fail(what + " not canonical");
      rep.failing_submatrix = std::make_pair(t, m - s);
    }
  } else {
    c[5] = na(t >= n ? "t = n" : "s = m");
  }

  rep.verdict = std::none_of(c.begin(), c.end(), [](const ConditionOutcome& o) {
    return o.status == ConditionStatus::fail;
  });
  return rep;
}

std::string format_report(const CanonicityReport& report) {
  std::string out;
  for (std::size_t k = 0; k < report.conditions.size(); ++k) {
    const auto& o = report.conditions[k];
    out += "cond" + std::to_string(k + 1) + ": " + verb(o.status) +
           " \xE2\x80\x94 " + o.reason + '\n';
  }
  out += std::string("verdict: ") +
         (report.verdict ? "canonical" : "not-canonical") + '\n';
  return out;
}

}  // namespace pmcanon
