#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "mwb/chain_complex.hpp"
#include "mwb/tree.hpp"

namespace mwb {

/// Formal Q-combination of canonically oriented trees sharing a leaf set and edge count.
struct TreeChain {
  std::map<Tree, Rational> terms;

  static TreeChain basis(const Tree& tree, Rational coefficient = Rational(1));
  bool is_zero() const { return terms.empty(); }
  void add(const Tree& tree, const Rational& coefficient);
  friend bool operator==(const TreeChain&, const TreeChain&) = default;
};

TreeChain operator+(const TreeChain& lhs, const TreeChain& rhs);
TreeChain operator*(const Rational& scalar, const TreeChain& chain);

/// Sum over all edge splittings, new edge first.
TreeChain split_differential(const TreeChain& chain);

/// Bilinear grafting c1 ∘_at c2 with orientation (c1 edges, c2 edges, grafting edge).
/// Satisfies d(x ∘ y) = dx ∘ y + (-1)^{edges(x)} x ∘ dy.
TreeChain insertion(const TreeChain& upper, const Label& at, const TreeChain& lower);

/// Which degree shift to apply to the arity-s component.
enum class ShiftConvention {
  kArityTimesDimension,  // L(s)[n(s-1)] ⊗ sgn^n
  kIncidenceStatement,   // L(s)[s(1-n)], no sign twist
};

/// The tree complex L(s) on leaves "1".."s". Trees with k internal edges sit in
/// cohomological degree 2 - s + k - shift; the differential is the signed sum of splittings.
class LComplex {
 public:
  static LComplex build(std::size_t arity);

  std::size_t arity() const { return arity_; }
  int degree_shift() const { return shift_; }
  int sign_power() const { return sign_power_; }
  const ChainComplex& complex() const { return complex_; }

  int degree_of(std::size_t edges) const;
  /// Basis trees of a degree; empty outside the complex.
  const std::vector<Tree>& trees(int degree) const;

  /// Matrix of the leaf permutation label i+1 -> permutation[i]+1 on one degree,
  /// including the Det reordering sign and the sgn^power twist.
  SparseMatrix action(const std::vector<std::size_t>& permutation, int degree) const;

  /// The n-shifted component; applying it twice composes shifts.
  LComplex shifted(int n, ShiftConvention convention = ShiftConvention::kArityTimesDimension) const;

 private:
  std::size_t arity_ = 0;
  int shift_ = 0;
  int sign_power_ = 0;
  std::vector<std::vector<Tree>> by_edges_;
  ChainComplex complex_;
};

/// Leaves "1".."s" as labels.
LeafSet numbered_leaves(std::size_t s);

ChainComplex build_L_complex(std::size_t arity);
std::vector<DegreeHomology> L_homology(std::size_t arity);

/// Stratum of F_n(S) indexed by a tree.
struct Stratum {
  Tree tree;
  int ambient_dimension = 1;
  int dim = 0;
  int codim = 0;
};

int stratum_dim(const Tree& tree, int ambient_dimension);
int stratum_codim(const Tree& tree);
Stratum stratum(const Tree& tree, int ambient_dimension);

/// True iff `other` is obtained from `tree` by one edge splitting.
bool incidence(const Tree& tree, const Tree& other);

}  // namespace mwb
