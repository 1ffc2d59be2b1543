#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "mwb/rational.hpp"

namespace mwb {

/// Sparse coordinate vector; absent keys are zero and stored values are never zero.
using SparseVector = std::map<std::size_t, Rational>;

/// y += a * x, dropping cancelled entries.
void axpy(SparseVector& y, const Rational& a, const SparseVector& x);

/// Column-major sparse matrix over Q. Column j is the image of basis vector j.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols);

  static SparseMatrix identity(std::size_t n);
  static SparseMatrix from_columns(std::size_t rows, std::vector<SparseVector> columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return columns_.size(); }
  std::size_t nonzeros() const;
  bool is_zero() const;

  /// Accumulates value into (row, col).
  void add(std::size_t row, std::size_t col, const Rational& value);
  void set(std::size_t row, std::size_t col, const Rational& value);
  Rational at(std::size_t row, std::size_t col) const;

  const SparseVector& column(std::size_t col) const { return columns_.at(col); }
  const std::vector<SparseVector>& columns() const { return columns_; }

  SparseVector apply(const SparseVector& x) const;
  SparseMatrix transpose() const;
  SparseMatrix scaled(const Rational& factor) const;

  friend SparseMatrix operator*(const SparseMatrix& lhs, const SparseMatrix& rhs);
  friend SparseMatrix operator+(const SparseMatrix& lhs, const SparseMatrix& rhs);
  friend SparseMatrix operator-(const SparseMatrix& lhs, const SparseMatrix& rhs);
  friend bool operator==(const SparseMatrix& lhs, const SparseMatrix& rhs) = default;

 private:
  void check(std::size_t row, std::size_t col) const;

  std::size_t rows_ = 0;
  std::vector<SparseVector> columns_;
};

/// Pivot selection for the fraction-free rank computation. Both orderings
/// must agree; tests use the pair as a cross-check.
enum class PivotOrder {
  kLowestRowFirst,            // columns in index order, pivot on smallest row
  kSparsestColumnHighestRow,  // sparsest columns first, pivot on largest row
};

/// Exact rank over Q by fraction-free integer elimination.
std::size_t rank(const SparseMatrix& matrix, PivotOrder order = PivotOrder::kLowestRowFirst);

/// Rank of the span of the given vectors, each of length rows.
std::size_t rank_of_columns(std::size_t rows, std::span<const SparseVector> columns,
                            PivotOrder order = PivotOrder::kLowestRowFirst);

/// Reduced row echelon form: pivot column of each nonzero row, rows normalized to leading 1.
struct RowEchelon {
  std::vector<std::size_t> pivot_columns;
  std::vector<SparseVector> rows;  // rows[i] has leading entry 1 at pivot_columns[i]
};

RowEchelon reduced_row_echelon(const SparseMatrix& matrix);

/// Basis of the null space, one vector per free column, in increasing free-column order.
std::vector<SparseVector> kernel_basis(const SparseMatrix& matrix);

/// Some x with matrix * x = target, or nullopt when target lies outside the column span.
std::optional<SparseVector> solve(const SparseMatrix& matrix, const SparseVector& target);

}  // namespace mwb
