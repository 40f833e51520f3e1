#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pmcanon/matrix.hpp"

namespace pmcanon {

// Per-row statistics. Indices are 0-based.
struct RowStats {
  std::vector<std::size_t> nu;            // nonzero entries in row i
  std::vector<std::size_t> zeta;          // rows whose code equals row i's
  std::vector<std::size_t> zclass_start;  // first row equal to row i
};

// Counts rows by code equality; no sorting involved.
RowStats row_stats(const Matrix& a);

// Rows and columns both nondecreasing as base-p numerals.
bool is_semi_canonical(const Matrix& a);

struct FirstRowColStructure {
  std::size_t s;  // nonzero entries of row 0
  std::size_t t;  // leading zeros of column 0
};

// For a semi-canonical matrix, row 0 is a run of zeros followed by
// nondecreasing nonzero digits, and likewise column 0. Throws ContractError if
// `a` is not semi-canonical and IntegrityError if the structure is missing.
FirstRowColStructure first_row_col_structure(const Matrix& a);

// The A -> A' -> A'' -> A''' construction for a row block i:
//   A'   : rows equal to row i moved to the front;
//   A''  : columns where row 0 of A' is nonzero moved, in increasing index
//          order, to the end (skipped when s = m);
//   A''' : last s columns of A'' sorted ascending by column code.
// Preconditions: rows sorted, t = zeta_0 < n, t <= i < n (0-based) and
// nu_i = nu_0. Throws ContractError otherwise.
Matrix condition5_transform(const Matrix& a, std::size_t i);

enum class ConditionStatus { pass, fail, not_applicable };

struct ConditionOutcome {
  ConditionStatus status = ConditionStatus::not_applicable;
  std::string reason;
};

struct CanonicityReport {
  bool verdict = false;
  std::array<ConditionOutcome, 6> conditions;
  // Condition 5: the first A''' whose row code is smaller than the input's.
  std::optional<Matrix> failing_witness;
  // Condition 6: the submatrix that was found not canonical, as
  // (first row, column count) of the block kept from the input.
  std::optional<std::pair<std::size_t, std::size_t>> failing_submatrix;
};

// Evaluates all six conditions of the canonicity criterion without
// short-circuiting. Condition 6 recurses on the lower-left submatrix.
CanonicityReport is_canonical(const Matrix& a);

// One line per condition, "cond<k>: pass|fail|n/a — <reason>", then
// "verdict: canonical|not-canonical". Every line newline-terminated.
std::string format_report(const CanonicityReport& report);

}  // namespace pmcanon
