#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "mwb/sparse_matrix.hpp"

namespace mwb {

/// A basis vector whose image under d∘d is nonzero.
struct SquareZeroWitness {
  int degree = 0;  // degree of the basis vector
  std::size_t basis_index = 0;
  std::string basis_label;
  SparseVector image;  // d(d(e)) in degree + 2
};

class SquareZeroError : public std::runtime_error {
 public:
  explicit SquareZeroError(SquareZeroWitness witness);
  const SquareZeroWitness& witness() const { return witness_; }

 private:
  SquareZeroWitness witness_;
};

enum class Verification { kImmediate, kDeferred };

/// Finite cochain complex of based Q-vector spaces, d: C^k -> C^(k+1).
///
/// Homological complexes are stored with negated degrees. Degrees outside the
/// stored range are zero spaces. Truncation flags mark degrees whose homology
/// may differ from the untruncated complex because a neighbouring space was cut off.
class ChainComplex {
 public:
  ChainComplex() = default;

  /// bases[i] is the basis of degree lowest + i; differentials[i] maps degree
  /// lowest + i to lowest + i + 1, so differentials.size() == bases.size() - 1.
  ChainComplex(int lowest, std::vector<std::vector<std::string>> bases, std::vector<SparseMatrix> differentials,
               Verification verification = Verification::kImmediate);

  bool empty() const { return bases_.empty(); }
  int lowest() const { return lowest_; }
  int highest() const { return lowest_ + static_cast<int>(bases_.size()) - 1; }
  bool in_range(int degree) const { return !empty() && degree >= lowest() && degree <= highest(); }

  std::size_t dim(int degree) const;
  const std::vector<std::string>& basis(int degree) const;
  /// The map C^degree -> C^(degree+1); a zero matrix of the right shape outside the stored maps.
  SparseMatrix differential(int degree) const;

  ChainComplex& mark_truncated_below(bool value = true);
  ChainComplex& mark_truncated_above(bool value = true);
  ChainComplex& flag_degree(int degree);
  bool truncated_below() const { return truncated_below_; }
  bool truncated_above() const { return truncated_above_; }
  bool truncation_affected(int degree) const;

  /// Same complex with every degree moved by offset.
  ChainComplex shifted(int offset) const;
  /// Copy with one differential entry negated; verification deferred. Used for mutation tests.
  ChainComplex with_flipped_entry(int degree, std::size_t row, std::size_t col) const;

 private:
  int lowest_ = 0;
  std::vector<std::vector<std::string>> bases_;
  std::vector<SparseMatrix> differentials_;
  bool truncated_below_ = false;
  bool truncated_above_ = false;
  std::set<int> flagged_;
};

/// nullopt when d∘d = 0 in every degree; otherwise the first offending basis vector.
std::optional<SquareZeroWitness> verify_square_zero(const ChainComplex& complex);

struct DegreeHomology {
  int degree = 0;
  std::size_t space_dim = 0;
  std::size_t rank_in = 0;   // rank of d: C^(degree-1) -> C^degree
  std::size_t rank_out = 0;  // rank of d: C^degree -> C^(degree+1)
  std::size_t dim = 0;
  bool truncation_affected = false;
};

/// Per-degree homology over the stored range. Throws SquareZeroError if d∘d != 0.
std::vector<DegreeHomology> homology_dims(const ChainComplex& complex,
                                          PivotOrder order = PivotOrder::kLowestRowFirst);

/// Sum of dims over the stored range.
std::size_t total_dimension(const std::vector<DegreeHomology>& homology);

/// Worker count for per-degree parallelism, from MWB_THREADS (default 1).
unsigned worker_threads();

}  // namespace mwb
