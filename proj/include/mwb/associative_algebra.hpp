#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mwb/sparse_matrix.hpp"

namespace mwb {

/// Basis triple (i, j, k) with (e_i e_j) e_k != e_i (e_j e_k).
struct AssociativityWitness {
  std::array<std::size_t, 3> triple{};
  SparseVector left;
  SparseVector right;
};

/// Finite-dimensional unital algebra over Q, concentrated in degree 0.
class AssociativeAlgebra {
 public:
  struct Constant {
    std::size_t i, j, k;
    Rational value;
  };

  /// Validates index ranges, associativity on all basis triples and both unit laws.
  AssociativeAlgebra(std::vector<std::string> names, SparseVector unit, const std::vector<Constant>& constants);

  std::size_t dim() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const SparseVector& unit() const { return unit_; }
  /// e_i e_j
  const SparseVector& product(std::size_t i, std::size_t j) const { return table_[i][j]; }
  SparseVector multiply(const SparseVector& x, const SparseVector& y) const;
  /// xy - yx
  SparseVector commutator(const SparseVector& x, const SparseVector& y) const;
  bool is_commutative() const;
  /// Structure constants as (i, j, k, value) triples in index order.
  std::vector<Constant> constants() const;

  /// Same algebra in the basis e'_j = Σ_i P_ij e_i; P must be invertible.
  AssociativeAlgebra change_basis(const SparseMatrix& p, std::vector<std::string> names) const;

 private:
  AssociativeAlgebra() = default;
  std::vector<std::string> names_;
  SparseVector unit_;
  std::vector<std::vector<SparseVector>> table_;
};

/// First failing basis triple, if any.
std::optional<AssociativityWitness> find_associativity_failure(std::size_t dim,
                                                              const std::vector<std::vector<SparseVector>>& table);

AssociativeAlgebra ground_field();
/// Q[x]/(x^k), basis 1, x, ..., x^(k-1).
AssociativeAlgebra truncated_polynomial(std::size_t k);
/// M_n(Q) with matrix units E_ij in row-major order.
AssociativeAlgebra matrix_algebra(std::size_t n);
/// Upper-triangular 2x2 matrices, basis E11, E12, E22.
AssociativeAlgebra upper_triangular_2x2();

}  // namespace mwb
