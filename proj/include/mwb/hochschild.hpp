#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mwb/associative_algebra.hpp"
#include "mwb/chain_complex.hpp"
#include "mwb/linfty.hpp"

namespace mwb {

enum class HochschildVariant { kStandard, kCyclicQuotient };

std::string to_string(HochschildVariant v);
HochschildVariant parse_variant(const std::string& text);

/// a_0 ⊗ … ⊗ a_m as basis indices.
using Tensor = std::vector<std::size_t>;
using TensorChain = std::map<Tensor, Rational>;

void add_term(TensorChain& chain, const Tensor& t, const Rational& c);

/// b(a_0⊗…⊗a_m) = Σ_{i<m} (-1)^i …⊗a_i a_{i+1}⊗… + (-1)^m a_m a_0⊗…⊗a_{m-1}
TensorChain hochschild_boundary(const AssociativeAlgebra& algebra, const TensorChain& chain);
/// t(a_0⊗…⊗a_m) = (-1)^m a_m⊗a_0⊗…⊗a_{m-1}
TensorChain cyclic_operator(const TensorChain& chain);
/// Σ_σ sgn(σ) a_σ(1)⊗…⊗a_σ(k), extended multilinearly from basis expansions.
TensorChain antisymmetrize(const std::vector<SparseVector>& elements);

/// Degree-m space A^⊗(m+1), or its quotient by the image of 1 - t, for m = 0..max_degree.
/// Stored cohomologically at degree -m; the top degree is flagged as truncated.
class HochschildComplex {
 public:
  HochschildComplex(const AssociativeAlgebra& algebra, std::size_t max_degree, HochschildVariant variant);

  HochschildVariant variant() const { return variant_; }
  std::size_t max_degree() const { return max_degree_; }
  const ChainComplex& complex() const { return complex_; }
  /// Basis tensors of degree m; for the quotient, the lexicographically least rotation of each nonzero orbit.
  const std::vector<Tensor>& basis(std::size_t m) const { return bases_.at(m); }
  /// Coordinates of a homogeneous chain of degree m in basis(m).
  SparseVector coordinates(std::size_t m, const TensorChain& chain) const;

 private:
  std::size_t index_of(std::size_t m, const Tensor& t) const;
  /// Rotation class of t in the quotient: (sign, representative); sign 0 for a zero class.
  std::pair<int, Tensor> reduce(const Tensor& t) const;

  std::size_t dim_ = 0;
  std::size_t max_degree_ = 0;
  HochschildVariant variant_ = HochschildVariant::kStandard;
  std::vector<std::vector<Tensor>> bases_;
  std::vector<std::map<Tensor, std::size_t>> index_;
  ChainComplex complex_;
};

/// HH_m (or the quotient variant) for m = 0..max_degree; degree max_degree is flagged.
std::vector<DegreeHomology> hochschild_homology(const AssociativeAlgebra& algebra, std::size_t max_degree,
                                                HochschildVariant variant = HochschildVariant::kStandard);

enum class VerdictKind { kProportional, kVacuous, kFailure };

struct TraceWitness {
  std::string wedge;  // e.g. "E11∧E12"
  std::size_t column = 0;
  SparseVector boundary_image;  // b(ε_k(w))
  SparseVector ce_image;        // ε_{k-1}(d_CE w)
};

struct DegreeVerdict {
  std::size_t k = 0;
  VerdictKind kind = VerdictKind::kVacuous;
  Rational ratio{1};  // r_k with b∘ε_k = r_k ε_{k-1}∘d_CE
  std::optional<TraceWitness> witness;
};

struct TraceCertificate {
  HochschildVariant variant = HochschildVariant::kStandard;
  std::size_t max_k = 0;
  std::vector<DegreeVerdict> degrees;  // k = 2..max_k
  bool success = false;
  std::vector<Rational> normalization;  // c_1..c_max_k, only on success

  const DegreeVerdict* first_failure() const;
};

/// Matrix of ε_k from Λ^k to degree k-1, columns in CE word order of length k.
SparseMatrix antisymmetrization_matrix(const AssociativeAlgebra& algebra, const CEComplex& ce,
                                       const HochschildComplex& target, std::size_t k);

/// Decides proportionality of b∘ε_k and ε_{k-1}∘d_CE for k = 2..max_k.
TraceCertificate certify_chain_map(const AssociativeAlgebra& algebra, std::size_t max_k, HochschildVariant variant);

struct InducedMap {
  std::size_t k = 0;  // H_k(CE) -> H_{k-1}(target)
  std::size_t source_dim = 0;
  std::size_t target_dim = 0;
  SparseMatrix matrix;
  std::size_t rank = 0;
};

/// The map induced by T_k = c_k ε_k for 1 <= k < max_k. Throws unless the certificate succeeded.
std::vector<InducedMap> induced_homology_map(const AssociativeAlgebra& algebra, const TraceCertificate& certificate);

}  // namespace mwb
