#include "mwb/curvature.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

namespace mwb {

namespace {

bool odd(int d) { return d % 2 != 0; }

std::string pair_label(const GradedSpace& s, std::size_t i, std::size_t j) {
  return "(" + s[i].name + ", " + s[j].name + ")";
}

}  // namespace

PairedSpace::PairedSpace(GradedSpace space, SparseMatrix pairing, int degree)
    : space_(std::move(space)), pairing_(std::move(pairing)), degree_(degree) {
  const std::size_t n = space_.size();
  if (pairing_.rows() != n || pairing_.cols() != n) {
    throw ValidationError("pairing matrix is " + std::to_string(pairing_.rows()) + "x" +
                          std::to_string(pairing_.cols()) + ", expected " + std::to_string(n) + "x" +
                          std::to_string(n));
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (const auto& [i, v] : pairing_.column(j)) {
      const int di = space_[i].degree;
      const int dj = space_[j].degree;
      if (di + dj + degree_ != 0) {
        throw ValidationError("pairing " + pair_label(space_, i, j) + " = " + to_string(v) + " between degrees " +
                              std::to_string(di) + " and " + std::to_string(dj) +
                              " is incompatible with pairing degree " + std::to_string(degree_));
      }
      const Rational swapped = (odd(di) && odd(dj)) ? Rational(-pairing_.at(j, i)) : pairing_.at(j, i);
      if (v != swapped) {
        throw ValidationError("graded symmetry fails on " + pair_label(space_, i, j) + ": " + to_string(v) +
                              " versus " + to_string(swapped));
      }
    }
  }
  const std::size_t r = rank(pairing_);
  if (r != n) {
    throw ValidationError("pairing is not perfect: rank " + std::to_string(r) + " on a space of dimension " +
                          std::to_string(n));
  }
}

PairedSpace orthogonal_sum(const PairedSpace& a, const PairedSpace& b) {
  if (a.degree() != b.degree()) throw ValidationError("orthogonal sum needs equal pairing degrees");
  std::vector<Generator> gens = a.space().generators();
  for (const auto& g : b.space().generators()) gens.push_back(g);
  const std::size_t na = a.size();
  SparseMatrix m(na + b.size(), na + b.size());
  for (std::size_t j = 0; j < na; ++j)
    for (const auto& [i, v] : a.pairing().column(j)) m.set(i, j, v);
  for (std::size_t j = 0; j < b.size(); ++j)
    for (const auto& [i, v] : b.pairing().column(j)) m.set(na + i, na + j, v);
  return PairedSpace(GradedSpace(std::move(gens)), std::move(m), a.degree());
}

GradedSpace homology_generators(const std::vector<std::size_t>& betti) {
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < betti.size(); ++i) {
    for (std::size_t k = 0; k < betti[i]; ++k) {
      std::string name = "h" + std::to_string(i);
      if (betti[i] > 1) name += "_" + std::to_string(k + 1);
      gens.push_back({name, -static_cast<int>(i)});
    }
  }
  return GradedSpace(std::move(gens));
}

ManifoldData::ManifoldData(int n, GradedSpace homology, SparseMatrix pairing) : n_(n) {
  if (n < 1) throw ValidationError("manifold dimension must be at least 1, got " + std::to_string(n));
  for (const auto& g : homology.generators()) {
    if (g.degree > 0 || g.degree < -n) {
      throw ValidationError("homology generator \"" + g.name + "\" has degree " + std::to_string(g.degree) +
                            " outside [-" + std::to_string(n) + ", 0]");
    }
  }
  std::vector<std::size_t> b(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& g : homology.generators()) ++b[static_cast<std::size_t>(-g.degree)];
  for (int i = 0; i <= n; ++i) {
    const std::size_t lhs = b[static_cast<std::size_t>(i)];
    const std::size_t rhs = b[static_cast<std::size_t>(n - i)];
    if (lhs != rhs) {
      throw ValidationError("Betti symmetry fails: b_" + std::to_string(i) + " = " + std::to_string(lhs) +
                            " but b_" + std::to_string(n - i) + " = " + std::to_string(rhs));
    }
  }
  homology_ = PairedSpace(std::move(homology), std::move(pairing), n);
}

ManifoldData ManifoldData::from_betti(int n, const std::vector<std::size_t>& betti, SparseMatrix pairing) {
  if (n < 1) throw ValidationError("manifold dimension must be at least 1, got " + std::to_string(n));
  if (betti.size() != static_cast<std::size_t>(n) + 1) {
    throw ValidationError("expected " + std::to_string(n + 1) + " Betti numbers, got " +
                          std::to_string(betti.size()));
  }
  return ManifoldData(n, homology_generators(betti), std::move(pairing));
}

ManifoldData ManifoldData::sphere(int n) {
  std::vector<std::size_t> betti(static_cast<std::size_t>(n) + 1, 0);
  betti.front() = 1;
  betti.back() = 1;
  SparseMatrix p(2, 2);
  p.set(0, 1, 1);
  p.set(1, 0, 1);
  return from_betti(n, betti, std::move(p));
}

std::vector<std::size_t> ManifoldData::betti() const {
  std::vector<std::size_t> b(static_cast<std::size_t>(n_) + 1, 0);
  for (const auto& g : homology_.space().generators()) ++b[static_cast<std::size_t>(-g.degree)];
  return b;
}

PairedSpace build_W(const PairedSpace& V, const ManifoldData& M) {
  const int n = M.n();
  if (V.degree() != -(n + 1)) {
    throw ValidationError("V pairs with degree " + std::to_string(V.degree()) + " but n = " + std::to_string(n) +
                          " needs degree " + std::to_string(-(n + 1)) +
                          "; the curvature element cannot be placed in degree +1");
  }
  const GradedSpace& v = V.space();
  const GradedSpace& h = M.homology().space();
  const int shift = 2 * n + 2;
  std::vector<Generator> gens;
  std::vector<int> raw;
  for (std::size_t a = 0; a < v.size(); ++a) {
    for (std::size_t i = 0; i < h.size(); ++i) {
      const int d = -v[a].degree + h[i].degree;
      raw.push_back(d);
      gens.push_back({v[a].name + "." + h[i].name, odd(d) ? d : d + shift});
    }
  }
  const std::size_t hn = h.size();
  SparseMatrix g(gens.size(), gens.size());
  for (std::size_t b = 0; b < v.size(); ++b) {
    for (const auto& [a, q] : V.pairing().column(b)) {
      for (std::size_t j = 0; j < hn; ++j) {
        for (const auto& [i, p] : M.homology().pairing().column(j)) {
          const bool sign = odd(h[i].degree) && odd(v[b].degree);
          const Rational value = sign ? Rational(-q * p) : Rational(q * p);
          g.set(a * hn + i, b * hn + j, value);
        }
      }
    }
  }
  for (std::size_t j = 0; j < gens.size(); ++j) {
    for (const auto& [i, c] : g.column(j)) {
      if (odd(raw[i]) == odd(raw[j])) {
        throw ValidationError("pairing couples " + gens[i].name + " and " + gens[j].name +
                              " of equal parity; ω would be even");
      }
    }
  }
  return PairedSpace(GradedSpace(std::move(gens)), std::move(g), -1);
}

AlgebraElement curvature_element(const FreeAlgebra& algebra, const PairedSpace& W) {
  if (W.degree() != -1) {
    throw ValidationError("pairing of degree " + std::to_string(W.degree()) + " places ω in degree " +
                          std::to_string(-W.degree()) + ", not +1");
  }
  AlgebraElement omega;
  for (std::size_t j = 0; j < W.size(); ++j) {
    for (const auto& [i, c] : W.pairing().column(j)) {
      if (i >= j) continue;
      omega = omega + c * algebra.multiply(algebra.generator(i), algebra.generator(j));
    }
  }
  if (omega.is_zero()) throw ValidationError("curvature element vanishes");
  if (!algebra.multiply(omega, omega).is_zero()) throw ValidationError("curvature element does not square to zero");
  return omega;
}

GradedSpace regraded(const GradedSpace& space, int odd_shift, int even_shift) {
  if (odd(odd_shift) || odd(even_shift)) throw ValidationError("regrading shifts must be even");
  std::vector<Generator> gens = space.generators();
  for (auto& g : gens) g.degree += g.odd() ? odd_shift : even_shift;
  return GradedSpace(std::move(gens));
}

std::string to_string(CurvatureRegime regime) {
  return regime == CurvatureRegime::kExactWindow ? "exact-window" : "cutoff";
}

std::string to_string(CurvatureStatus status) {
  switch (status) {
    case CurvatureStatus::kExact:
      return "exact";
    case CurvatureStatus::kStabilized:
      return "stabilized";
    case CurvatureStatus::kInconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

namespace {

std::size_t basis_size(const SymmetricBasis& b) {
  std::size_t total = 0;
  for (const auto& [d, list] : b.by_degree) total += list.size();
  return total;
}

void guard(const SymmetricBasis& b, const CurvatureOptions& options) {
  const std::size_t size = basis_size(b);
  if (size > options.max_basis) {
    throw ValidationError("basis of " + std::to_string(size) + " monomials exceeds the limit " +
                          std::to_string(options.max_basis));
  }
}

bool even_degrees_usable(const GradedSpace& s) {
  bool pos = false, neg = false;
  for (const auto& g : s.generators()) {
    if (g.odd()) continue;
    if (g.degree == 0) return false;
    (g.degree > 0 ? pos : neg) = true;
  }
  return !(pos && neg);
}

}  // namespace

CurvatureComplex curvature_complex(const PairedSpace& W, const CurvatureOptions& options) {
  CurvatureComplex out;
  out.space = W.space();
  if (!even_degrees_usable(out.space) && options.allow_regrading) {
    int lowest_even = 0;
    for (const auto& g : out.space.generators())
      if (!g.odd()) lowest_even = std::min(lowest_even, g.degree);
    int beta = 2 - lowest_even;
    if (odd(beta)) ++beta;
    out.regrading = beta;
    out.space = regraded(out.space, -beta, beta);
  }
  out.algebra = FreeAlgebra(out.space);
  out.omega = curvature_element(out.algebra, PairedSpace(out.space, W.pairing(), W.degree()));

  if (even_degrees_usable(out.space)) {
    out.regime = CurvatureRegime::kExactWindow;
    int odd_neg = 0, odd_pos = 0, max_even = 0, evens = 0;
    bool positive = true;
    for (const auto& g : out.space.generators()) {
      if (g.odd()) {
        (g.degree < 0 ? odd_neg : odd_pos) += g.degree;
      } else {
        ++evens;
        positive = g.degree > 0;
        max_even = std::max(max_even, std::abs(g.degree));
      }
    }
    const int reach = (evens + static_cast<int>(options.extra_even_letters)) * max_even;
    SymmetricBasis basis;
    if (positive) {
      out.lo = odd_neg;
      out.hi = odd_pos + reach;
      basis = out.algebra.basis_in_window(out.lo, out.hi + 1);
    } else {
      out.lo = odd_neg - reach;
      out.hi = odd_pos;
      basis = out.algebra.basis_in_window(out.lo - 1, out.hi);
    }
    guard(basis, options);
    out.complex = multiplication_operator(out.algebra, out.omega, basis);
    return out;
  }

  out.regime = CurvatureRegime::kCutoff;
  const std::size_t k = options.cutoff ? options.cutoff : 2 * out.space.size() + 2;
  out.cutoff = k;
  SymmetricBasis basis = out.algebra.basis_up_to_length(k);
  guard(basis, options);
  out.complex = multiplication_operator(out.algebra, out.omega, basis);
  out.lo = out.complex.lowest();
  out.hi = out.complex.highest();
  return out;
}

namespace {

std::map<int, std::size_t> reliable_dims(const std::vector<DegreeHomology>& h) {
  std::map<int, std::size_t> out;
  for (const auto& d : h)
    if (!d.truncation_affected && d.dim) out[d.degree] = d.dim;
  return out;
}

}  // namespace

CurvatureReport analyze_curvature(const PairedSpace& W, const CurvatureOptions& options) {
  const CurvatureComplex cc = curvature_complex(W, options);
  CurvatureReport r;
  r.W = W;
  r.regrading = cc.regrading;
  r.omega = cc.algebra.to_string(cc.omega);
  r.regime = cc.regime;
  r.lo = cc.lo;
  r.hi = cc.hi;
  r.cutoff = cc.cutoff;
  const auto all = homology_dims(cc.complex);

  CurvatureOptions wider = options;
  if (cc.regime == CurvatureRegime::kExactWindow) {
    wider.extra_even_letters += 2;
  } else {
    wider.cutoff = *cc.cutoff + 2;
  }
  const CurvatureComplex bigger = curvature_complex(W, wider);
  const auto all_bigger = homology_dims(bigger.complex);

  if (cc.regime == CurvatureRegime::kExactWindow) {
    bool affected = false;
    for (const auto& d : all) {
      if (d.degree < r.lo || d.degree > r.hi) continue;
      affected = affected || d.truncation_affected;
      r.homology.push_back(d);
    }
    std::vector<int> beyond;
    for (const auto& d : all_bigger) {
      if ((d.degree < r.lo || d.degree > r.hi) && d.degree >= bigger.lo && d.degree <= bigger.hi && d.dim)
        beyond.push_back(d.degree);
    }
    if (affected) {
      r.status = CurvatureStatus::kInconclusive;
      r.status_detail = "a reported degree is truncation-affected";
    } else if (!beyond.empty()) {
      r.status = CurvatureStatus::kInconclusive;
      r.status_detail = "cohomology appears beyond the window at degree " + std::to_string(beyond.front());
    } else {
      r.status = CurvatureStatus::kExact;
      r.status_detail = "every graded piece in [" + std::to_string(r.lo) + ", " + std::to_string(r.hi) +
                        "] is complete; widening to [" + std::to_string(bigger.lo) + ", " +
                        std::to_string(bigger.hi) + "] adds no cohomology";
    }
  } else {
    std::vector<int> excluded;
    for (const auto& d : all) {
      if (d.truncation_affected) {
        excluded.push_back(d.degree);
      } else {
        r.homology.push_back(d);
      }
    }
    const auto a = reliable_dims(all);
    const auto b = reliable_dims(all_bigger);
    if (r.homology.empty()) {
      r.status = CurvatureStatus::kInconclusive;
      r.status_detail = "every degree is truncation-affected at word length " + std::to_string(*cc.cutoff);
    } else if (a != b) {
      r.status = CurvatureStatus::kInconclusive;
      r.status_detail = "cohomology changes between word length " + std::to_string(*cc.cutoff) + " and " +
                        std::to_string(*cc.cutoff + 2);
    } else {
      r.status = CurvatureStatus::kStabilized;
      r.status_detail = "unchanged between word length " + std::to_string(*cc.cutoff) + " and " +
                        std::to_string(*cc.cutoff + 2) + "; " + std::to_string(excluded.size()) +
                        " truncation-affected degrees excluded";
    }
  }
  for (const auto& d : r.homology) {
    r.total_dim += d.dim;
    if (d.dim) r.nonzero_degrees.push_back(d.degree);
  }

  r.conventions = {
      {"grading", "cohomological; multiplication by the curvature raises degree by 1"},
      {"curvature", "ω = ½ Σ G_ij w_i w_j for the pairing G of degree -1, word length 2"},
      {"location", "cohomological degree d is homological degree -d"},
  };
  if (cc.regrading) {
    r.conventions.emplace_back("regrading", "even generators +" + std::to_string(cc.regrading) +
                                                ", odd generators -" + std::to_string(cc.regrading));
  }
  return r;
}

CurvatureReport verify_one_dimensional(const PairedSpace& V, const ManifoldData& M, const CurvatureOptions& options) {
  const PairedSpace W = build_W(V, M);
  CurvatureReport r = analyze_curvature(W, options);
  const int shift = 2 * M.n() + 2;
  r.conventions.insert(r.conventions.begin(),
                       {{"generators", "W = V^∨ ⊗ H_*(M) with H_*(M) negatively graded, |v^∨⊗h| = -|v| + |h|"},
                        {"pairing", "⟨v^∨⊗h, w^∨⊗k⟩ = (-1)^{|h||w|} q(v,w) P(h,k)"},
                        {"even shift", "even generators of W raised by 2n+2 = " + std::to_string(shift) +
                                           " so the pairing has degree -1"}});
  return r;
}

}  // namespace mwb
