#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mwb/associative_algebra.hpp"
#include "mwb/graded_algebra.hpp"

namespace mwb {

/// l_i on one basis tuple; the tuple may come in any order.
struct BracketEntry {
  std::vector<std::size_t> inputs;
  SparseVector value;
};

/// A DG Lie relation failing on named basis elements.
class RelationError : public ValidationError {
 public:
  RelationError(std::string relation, std::vector<std::string> inputs, SparseVector defect);
  const std::string& relation() const { return relation_; }
  const std::vector<std::string>& inputs() const { return inputs_; }
  const SparseVector& defect() const { return defect_; }

 private:
  std::string relation_;
  std::vector<std::string> inputs_;
  SparseVector defect_;
};

/// L∞ structure on a finite graded space: d of degree +1 and brackets l_i of
/// degree 2 - i, graded antisymmetric. Brackets are kept on nondecreasing
/// index tuples; other orders follow from the antisymmetry sign.
class LInftyStructure {
 public:
  using Table = std::map<std::vector<std::size_t>, SparseVector>;

  LInftyStructure() = default;
  /// Checks index ranges, degrees and antisymmetry consistency; relations are left to check_linfty.
  LInftyStructure(GradedSpace space, std::map<std::size_t, SparseVector> differential,
                  const std::vector<BracketEntry>& brackets);

  /// Also checks d² = 0, graded Jacobi and the Leibniz rule; throws RelationError on the first failure.
  static LInftyStructure from_dgla(GradedSpace space, std::map<std::size_t, SparseVector> differential,
                                   const std::vector<BracketEntry>& bracket);
  /// Commutator bracket, d = 0, in degree 0.
  static LInftyStructure from_associative(const AssociativeAlgebra& algebra);

  const GradedSpace& space() const { return space_; }
  const std::map<std::size_t, SparseVector>& differential() const { return d_; }
  SparseVector differential(std::size_t i) const;
  /// l_i on an arbitrary ordering of basis indices.
  SparseVector bracket(const std::vector<std::size_t>& inputs) const;
  const std::map<std::size_t, Table>& brackets() const { return brackets_; }
  /// Largest i with l_i != 0, counting d as arity 1; 0 for the zero structure.
  std::size_t max_arity() const;

  /// Letters s·x of the CE complex: degree |x| - 1, named "s" + name.
  GradedSpace ce_letters() const;

 private:
  GradedSpace space_;
  std::map<std::size_t, SparseVector> d_;
  std::map<std::size_t, Table> brackets_;
};

/// Sign of sorting `inputs` under graded antisymmetry; 0 when an even element repeats.
int antisymmetry_sign(const GradedSpace& space, std::vector<std::size_t>& inputs);

/// The coderivation d_tot on one word of S*(𝔤[-1]).
AlgebraElement ce_differential(const LInftyStructure& g, const FreeAlgebra& letters, const Monomial& word);

struct CEComplex {
  FreeAlgebra letters{GradedSpace{}};
  SymmetricBasis basis;
  ChainComplex complex;
  std::size_t cutoff = 0;
};

/// Words of length <= cutoff. Degrees holding a word of length >= cutoff - max_arity + 1 are
/// flagged, unless every letter is odd and the cutoff covers all of them.
CEComplex ce_complex(const LInftyStructure& g, std::size_t cutoff);

/// nullopt when d_tot² = 0 on words of length <= cutoff, else the first failing word.
std::optional<SquareZeroWitness> check_linfty(const LInftyStructure& g, std::size_t cutoff);

}  // namespace mwb
