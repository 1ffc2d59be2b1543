#include "mwb/sparse_matrix.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace mwb {

void axpy(SparseVector& y, const Rational& a, const SparseVector& x) {
  if (is_zero(a)) return;
  for (const auto& [index, value] : x) {
    auto [it, inserted] = y.try_emplace(index, a * value);
    if (!inserted) {
      it->second += a * value;
      if (is_zero(it->second)) y.erase(it);
    }
  }
}

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  SparseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.columns_[i].emplace(i, Rational(1));
  return m;
}

SparseMatrix SparseMatrix::from_columns(std::size_t rows, std::vector<SparseVector> columns) {
  SparseMatrix m(rows, 0);
  m.columns_ = std::move(columns);
  for (auto& col : m.columns_) {
    std::erase_if(col, [](const auto& entry) { return mwb::is_zero(entry.second); });
    if (!col.empty() && col.rbegin()->first >= rows) {
      throw ValidationError("column entry at row " + std::to_string(col.rbegin()->first) +
                            " exceeds row count " + std::to_string(rows));
    }
  }
  return m;
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& col : columns_) n += col.size();
  return n;
}

bool SparseMatrix::is_zero() const {
  return std::all_of(columns_.begin(), columns_.end(), [](const auto& c) { return c.empty(); });
}

void SparseMatrix::check(std::size_t row, std::size_t col) const {
  if (row >= rows_ || col >= columns_.size()) {
    throw std::out_of_range("matrix index (" + std::to_string(row) + ", " + std::to_string(col) +
                            ") outside " + std::to_string(rows_) + "x" + std::to_string(cols()));
  }
}

void SparseMatrix::add(std::size_t row, std::size_t col, const Rational& value) {
  check(row, col);
  if (mwb::is_zero(value)) return;
  auto& c = columns_[col];
  auto [it, inserted] = c.try_emplace(row, value);
  if (!inserted) {
    it->second += value;
    if (mwb::is_zero(it->second)) c.erase(it);
  }
}

void SparseMatrix::set(std::size_t row, std::size_t col, const Rational& value) {
  check(row, col);
  if (mwb::is_zero(value)) {
    columns_[col].erase(row);
  } else {
    columns_[col][row] = value;
  }
}

Rational SparseMatrix::at(std::size_t row, std::size_t col) const {
  check(row, col);
  const auto& c = columns_[col];
  auto it = c.find(row);
  return it == c.end() ? Rational(0) : it->second;
}

SparseVector SparseMatrix::apply(const SparseVector& x) const {
  SparseVector y;
  for (const auto& [index, value] : x) axpy(y, value, columns_.at(index));
  return y;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(cols(), rows_);
  for (std::size_t j = 0; j < cols(); ++j) {
    for (const auto& [i, v] : columns_[j]) t.columns_[i].emplace(j, v);
  }
  return t;
}

SparseMatrix SparseMatrix::scaled(const Rational& factor) const {
  SparseMatrix out(rows_, cols());
  if (mwb::is_zero(factor)) return out;
  for (std::size_t j = 0; j < cols(); ++j) {
    for (const auto& [i, v] : columns_[j]) out.columns_[j].emplace(i, v * factor);
  }
  return out;
}

SparseMatrix operator*(const SparseMatrix& lhs, const SparseMatrix& rhs) {
  if (lhs.cols() != rhs.rows()) {
    throw ValidationError("matrix product shape mismatch: " + std::to_string(lhs.rows()) + "x" +
                          std::to_string(lhs.cols()) + " times " + std::to_string(rhs.rows()) + "x" +
                          std::to_string(rhs.cols()));
  }
  SparseMatrix out(lhs.rows(), rhs.cols());
  for (std::size_t j = 0; j < rhs.cols(); ++j) out.columns_[j] = lhs.apply(rhs.columns_[j]);
  return out;
}

namespace {

SparseMatrix combine(const SparseMatrix& lhs, const SparseMatrix& rhs, const Rational& sign) {
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols()) {
    throw ValidationError("matrix sum shape mismatch");
  }
  std::vector<SparseVector> cols = lhs.columns();
  for (std::size_t j = 0; j < cols.size(); ++j) axpy(cols[j], sign, rhs.column(j));
  return SparseMatrix::from_columns(lhs.rows(), std::move(cols));
}

using IntegerVector = std::map<std::size_t, Integer>;

// Scale a rational vector to a primitive integer vector with the same span.
IntegerVector primitive(const SparseVector& v) {
  Integer lcm = 1;
  for (const auto& [i, value] : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), value.get_den_mpz_t());
  IntegerVector out;
  Integer content = 0;
  for (const auto& [i, value] : v) {
    Integer scaled = value.get_num() * (lcm / value.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), scaled.get_mpz_t());
    out.emplace(i, std::move(scaled));
  }
  if (content > 1) {
    for (auto& [i, value] : out) mpz_divexact(value.get_mpz_t(), value.get_mpz_t(), content.get_mpz_t());
  }
  return out;
}

void make_primitive(IntegerVector& v) {
  Integer content = 0;
  for (const auto& [i, value] : v) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), value.get_mpz_t());
  if (content > 1) {
    for (auto& [i, value] : v) mpz_divexact(value.get_mpz_t(), value.get_mpz_t(), content.get_mpz_t());
  }
}

// v <- a*v - b*p, where a = p[pivot] and b = v[pivot]; cancels the pivot entry.
void eliminate(IntegerVector& v, const IntegerVector& p, std::size_t pivot) {
  const Integer a = p.at(pivot);
  const Integer b = v.at(pivot);
  for (auto& [i, value] : v) value *= a;
  for (const auto& [i, value] : p) {
    auto [it, inserted] = v.try_emplace(i, -b * value);
    if (!inserted) {
      it->second -= b * value;
      if (it->second == 0) v.erase(it);
    }
  }
  make_primitive(v);
}

}  // namespace

SparseMatrix operator+(const SparseMatrix& lhs, const SparseMatrix& rhs) { return combine(lhs, rhs, Rational(1)); }
SparseMatrix operator-(const SparseMatrix& lhs, const SparseMatrix& rhs) { return combine(lhs, rhs, Rational(-1)); }

std::size_t rank_of_columns(std::size_t rows, std::span<const SparseVector> columns, PivotOrder order) {
  std::vector<std::size_t> sequence(columns.size());
  std::iota(sequence.begin(), sequence.end(), std::size_t{0});
  const bool highest = order == PivotOrder::kSparsestColumnHighestRow;
  if (highest) {
    std::stable_sort(sequence.begin(), sequence.end(), [&](std::size_t a, std::size_t b) {
      return columns[a].size() < columns[b].size();
    });
  }
  std::map<std::size_t, IntegerVector> pivots;
  for (std::size_t j : sequence) {
    if (!columns[j].empty() && columns[j].rbegin()->first >= rows) {
      throw ValidationError("vector entry exceeds declared length");
    }
    IntegerVector v = primitive(columns[j]);
    while (!v.empty()) {
      const std::size_t lead = highest ? v.rbegin()->first : v.begin()->first;
      auto it = pivots.find(lead);
      if (it == pivots.end()) {
        pivots.emplace(lead, std::move(v));
        break;
      }
      eliminate(v, it->second, lead);
    }
  }
  return pivots.size();
}

std::size_t rank(const SparseMatrix& matrix, PivotOrder order) {
  return rank_of_columns(matrix.rows(), matrix.columns(), order);
}

RowEchelon reduced_row_echelon(const SparseMatrix& matrix) {
  const SparseMatrix rows = matrix.transpose();
  std::map<std::size_t, SparseVector> pivots;
  for (const auto& original : rows.columns()) {
    SparseVector v = original;
    while (!v.empty()) {
      const std::size_t lead = v.begin()->first;
      auto it = pivots.find(lead);
      if (it == pivots.end()) {
        const Rational inv = 1 / v.begin()->second;
        for (auto& [i, value] : v) value *= inv;
        pivots.emplace(lead, std::move(v));
        break;
      }
      const Rational factor = -v.begin()->second;
      axpy(v, factor, it->second);
    }
  }
  // Back substitution from the last pivot down.
  for (auto hi = pivots.rbegin(); hi != pivots.rend(); ++hi) {
    for (auto lo = std::next(hi); lo != pivots.rend(); ++lo) {
      auto entry = lo->second.find(hi->first);
      if (entry != lo->second.end()) {
        const Rational factor = -entry->second;
        axpy(lo->second, factor, hi->second);
      }
    }
  }
  RowEchelon out;
  for (auto& [col, row] : pivots) {
    out.pivot_columns.push_back(col);
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::vector<SparseVector> kernel_basis(const SparseMatrix& matrix) {
  const RowEchelon echelon = reduced_row_echelon(matrix);
  std::vector<bool> is_pivot(matrix.cols(), false);
  for (std::size_t c : echelon.pivot_columns) is_pivot[c] = true;
  std::vector<SparseVector> basis;
  for (std::size_t free = 0; free < matrix.cols(); ++free) {
    if (is_pivot[free]) continue;
    SparseVector v;
    v.emplace(free, Rational(1));
    for (std::size_t r = 0; r < echelon.rows.size(); ++r) {
      auto entry = echelon.rows[r].find(free);
      if (entry != echelon.rows[r].end()) v.emplace(echelon.pivot_columns[r], -entry->second);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<SparseVector> solve(const SparseMatrix& matrix, const SparseVector& target) {
  std::vector<SparseVector> cols = matrix.columns();
  cols.push_back(target);
  const std::size_t augmented = matrix.cols();
  const RowEchelon echelon = reduced_row_echelon(SparseMatrix::from_columns(matrix.rows(), std::move(cols)));
  SparseVector x;
  for (std::size_t r = 0; r < echelon.rows.size(); ++r) {
    if (echelon.pivot_columns[r] == augmented) return std::nullopt;
    auto entry = echelon.rows[r].find(augmented);
    if (entry != echelon.rows[r].end()) x.emplace(echelon.pivot_columns[r], entry->second);
  }
  return x;
}

}  // namespace mwb
