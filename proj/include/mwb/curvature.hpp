#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mwb/chain_complex.hpp"
#include "mwb/graded_algebra.hpp"
#include "mwb/sparse_matrix.hpp"

namespace mwb {

/// Graded space with a perfect, graded-symmetric bilinear form of fixed degree.
/// Entry (i, j) of the pairing matrix is ⟨e_i, e_j⟩; it vanishes unless |e_i| + |e_j| + degree = 0.
class PairedSpace {
 public:
  PairedSpace() = default;
  PairedSpace(GradedSpace space, SparseMatrix pairing, int degree);

  const GradedSpace& space() const { return space_; }
  const SparseMatrix& pairing() const { return pairing_; }
  int degree() const { return degree_; }
  std::size_t size() const { return space_.size(); }
  Rational pair(std::size_t i, std::size_t j) const { return pairing_.at(i, j); }

 private:
  GradedSpace space_;
  SparseMatrix pairing_;
  int degree_ = 0;
};

/// Orthogonal direct sum; generator names must stay distinct.
PairedSpace orthogonal_sum(const PairedSpace& a, const PairedSpace& b);

/// Homology of a closed n-manifold, negatively graded, with its Poincaré pairing (degree n).
class ManifoldData {
 public:
  ManifoldData(int n, GradedSpace homology, SparseMatrix pairing);

  /// betti[i] = b_i; generators are named h<i> or h<i>_<j>, with degree -i.
  static ManifoldData from_betti(int n, const std::vector<std::size_t>& betti, SparseMatrix pairing);
  static ManifoldData sphere(int n);

  int n() const { return n_; }
  const PairedSpace& homology() const { return homology_; }
  std::vector<std::size_t> betti() const;

 private:
  int n_ = 0;
  PairedSpace homology_;
};

/// Generator names for given Betti numbers, in degree order 0, -1, ..., -n.
GradedSpace homology_generators(const std::vector<std::size_t>& betti);

/// W = V^∨ ⊗ H_*(M) with pairing ⟨v^∨⊗h, w^∨⊗k⟩ = (-1)^{|h||w|} q(v,w) P(h,k).
/// Even generators are raised by 2n+2 so that the pairing has degree -1.
PairedSpace build_W(const PairedSpace& V, const ManifoldData& M);

/// ω = ½ Σ G_ij w_i w_j. Requires pairing degree -1; checks ω ≠ 0 and ω² = 0.
AlgebraElement curvature_element(const FreeAlgebra& algebra, const PairedSpace& W);

/// deg ↦ deg + odd_shift on odd generators and deg + even_shift on even ones. Shifts must be even.
GradedSpace regraded(const GradedSpace& space, int odd_shift, int even_shift);

enum class CurvatureRegime { kExactWindow, kCutoff };
enum class CurvatureStatus { kExact, kStabilized, kInconclusive };

std::string to_string(CurvatureRegime regime);
std::string to_string(CurvatureStatus status);

struct CurvatureOptions {
  bool allow_regrading = true;        // deg + β(#even - #odd) when the even degrees are unsuitable
  std::size_t extra_even_letters = 2;  // window reach beyond one even letter per generator
  std::size_t cutoff = 0;              // word-length bound for the fallback; 0 picks 2·dim W + 2
  std::size_t max_basis = 200000;      // total monomials allowed in one complex
};

struct CurvatureComplex {
  GradedSpace space;  // grading used for the complex
  int regrading = 0;  // β above
  FreeAlgebra algebra{GradedSpace{}};
  AlgebraElement omega;
  CurvatureRegime regime = CurvatureRegime::kExactWindow;
  int lo = 0;  // degrees reported as exact
  int hi = 0;
  std::optional<std::size_t> cutoff;
  ChainComplex complex;
};

/// Multiplication by ω on S*(W): exact per-degree window when the even degrees allow it, else a cutoff.
CurvatureComplex curvature_complex(const PairedSpace& W, const CurvatureOptions& options = {});

struct CurvatureReport {
  PairedSpace W;
  int regrading = 0;
  std::string omega;
  CurvatureRegime regime = CurvatureRegime::kExactWindow;
  int lo = 0;
  int hi = 0;
  std::optional<std::size_t> cutoff;
  std::vector<DegreeHomology> homology;  // reported degrees
  std::size_t total_dim = 0;
  std::vector<int> nonzero_degrees;
  CurvatureStatus status = CurvatureStatus::kInconclusive;
  std::string status_detail;
  std::vector<std::pair<std::string, std::string>> conventions;

  bool one_dimensional() const { return status != CurvatureStatus::kInconclusive && total_dim == 1; }
};

CurvatureReport analyze_curvature(const PairedSpace& W, const CurvatureOptions& options = {});
CurvatureReport verify_one_dimensional(const PairedSpace& V, const ManifoldData& M,
                                       const CurvatureOptions& options = {});

}  // namespace mwb
