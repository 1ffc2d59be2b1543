#include "mwb/hochschild.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "mwb/tree.hpp"

namespace mwb {

std::string to_string(HochschildVariant v) { return v == HochschildVariant::kStandard ? "standard" : "cyclic-quotient"; }

HochschildVariant parse_variant(const std::string& text) {
  if (text == "standard") return HochschildVariant::kStandard;
  if (text == "cyclic-quotient" || text == "cyclic") return HochschildVariant::kCyclicQuotient;
  throw ValidationError("unknown Hochschild variant \"" + text + "\" (expected standard or cyclic-quotient)");
}

void add_term(TensorChain& chain, const Tensor& t, const Rational& c) {
  if (mwb::is_zero(c)) return;
  auto [it, inserted] = chain.try_emplace(t, c);
  if (!inserted) {
    it->second += c;
    if (mwb::is_zero(it->second)) chain.erase(it);
  }
}

TensorChain hochschild_boundary(const AssociativeAlgebra& algebra, const TensorChain& chain) {
  TensorChain out;
  for (const auto& [t, c] : chain) {
    const std::size_t m = t.size() - 1;
    if (m == 0) continue;
    for (std::size_t i = 0; i < m; ++i) {
      const Rational sign(i % 2 == 0 ? 1 : -1);
      for (const auto& [k, v] : algebra.product(t[i], t[i + 1])) {
        Tensor u;
        u.insert(u.end(), t.begin(), t.begin() + static_cast<std::ptrdiff_t>(i));
        u.push_back(k);
        u.insert(u.end(), t.begin() + static_cast<std::ptrdiff_t>(i) + 2, t.end());
        add_term(out, u, sign * c * v);
      }
    }
    const Rational sign(m % 2 == 0 ? 1 : -1);
    for (const auto& [k, v] : algebra.product(t[m], t[0])) {
      Tensor u{k};
      u.insert(u.end(), t.begin() + 1, t.end() - 1);
      add_term(out, u, sign * c * v);
    }
  }
  return out;
}

TensorChain cyclic_operator(const TensorChain& chain) {
  TensorChain out;
  for (const auto& [t, c] : chain) {
    const std::size_t m = t.size() - 1;
    Tensor u{t.back()};
    u.insert(u.end(), t.begin(), t.end() - 1);
    add_term(out, u, Rational(m % 2 == 0 ? 1 : -1) * c);
  }
  return out;
}

TensorChain antisymmetrize(const std::vector<SparseVector>& elements) {
  const std::size_t k = elements.size();
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  TensorChain out;
  do {
    const Rational sign(sorting_sign(perm));
    // Expand a_σ(1) ⊗ … ⊗ a_σ(k).
    TensorChain partial{{Tensor{}, sign}};
    for (std::size_t pos = 0; pos < k; ++pos) {
      TensorChain next;
      for (const auto& [t, c] : partial) {
        for (const auto& [i, v] : elements[perm[pos]]) {
          Tensor u = t;
          u.push_back(i);
          add_term(next, u, c * v);
        }
      }
      partial = std::move(next);
    }
    for (const auto& [t, c] : partial) add_term(out, t, c);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

namespace {

std::vector<Tensor> all_tensors(std::size_t dim, std::size_t length) {
  std::vector<Tensor> out;
  Tensor t(length, 0);
  while (true) {
    out.push_back(t);
    std::size_t i = length;
    bool carry = true;
    while (i > 0 && carry) {
      --i;
      if (++t[i] < dim) {
        carry = false;
      } else {
        t[i] = 0;
      }
    }
    if (carry) return out;
  }
}

std::string tensor_label(const AssociativeAlgebra& algebra, const Tensor& t) {
  std::string out;
  for (std::size_t i = 0; i < t.size(); ++i) out += (i ? "⊗" : "") + algebra.names()[t[i]];
  return out;
}

Tensor rotate(const Tensor& t) {
  Tensor u{t.back()};
  u.insert(u.end(), t.begin(), t.end() - 1);
  return u;
}

}  // namespace

std::pair<int, Tensor> HochschildComplex::reduce(const Tensor& t) const {
  const std::size_t m = t.size() - 1;
  Tensor best = t;
  std::size_t best_r = 0;
  Tensor cur = t;
  std::size_t period = t.size();
  for (std::size_t r = 1; r <= m; ++r) {
    cur = rotate(cur);
    if (cur == t && period == t.size()) period = r;
    if (cur < best) {
      best = cur;
      best_r = r;
    }
  }
  if ((m * period) % 2 == 1) return {0, best};
  return {(m * best_r) % 2 == 0 ? 1 : -1, best};
}

HochschildComplex::HochschildComplex(const AssociativeAlgebra& algebra, std::size_t max_degree,
                                     HochschildVariant variant)
    : dim_(algebra.dim()), max_degree_(max_degree), variant_(variant) {
  for (std::size_t m = 0; m <= max_degree; ++m) {
    std::vector<Tensor> basis;
    for (auto& t : all_tensors(dim_, m + 1)) {
      if (variant == HochschildVariant::kCyclicQuotient) {
        const auto [sign, rep] = reduce(t);
        if (sign == 0 || rep != t) continue;
      }
      basis.push_back(std::move(t));
    }
    std::map<Tensor, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);
    bases_.push_back(std::move(basis));
    index_.push_back(std::move(index));
  }
  std::vector<std::vector<std::string>> labels;
  for (std::size_t m = max_degree + 1; m-- > 0;) {
    std::vector<std::string> l;
    for (const auto& t : bases_[m]) l.push_back(tensor_label(algebra, t));
    labels.push_back(std::move(l));
  }
  std::vector<SparseMatrix> diffs;
  for (std::size_t m = max_degree; m >= 1; --m) {
    std::vector<SparseVector> cols;
    for (const auto& t : bases_[m]) cols.push_back(coordinates(m - 1, hochschild_boundary(algebra, {{t, Rational(1)}})));
    diffs.push_back(SparseMatrix::from_columns(bases_[m - 1].size(), std::move(cols)));
  }
  complex_ = ChainComplex(-static_cast<int>(max_degree), std::move(labels), std::move(diffs));
  complex_.mark_truncated_below();
}

std::size_t HochschildComplex::index_of(std::size_t m, const Tensor& t) const { return index_.at(m).at(t); }

SparseVector HochschildComplex::coordinates(std::size_t m, const TensorChain& chain) const {
  SparseVector out;
  for (const auto& [t, c] : chain) {
    if (t.size() != m + 1) throw ValidationError("chain is not homogeneous of degree " + std::to_string(m));
    if (variant_ == HochschildVariant::kStandard) {
      axpy(out, c, SparseVector{{index_of(m, t), Rational(1)}});
    } else {
      const auto [sign, rep] = reduce(t);
      if (sign != 0) axpy(out, Rational(sign) * c, SparseVector{{index_of(m, rep), Rational(1)}});
    }
  }
  return out;
}

std::vector<DegreeHomology> hochschild_homology(const AssociativeAlgebra& algebra, std::size_t max_degree,
                                                HochschildVariant variant) {
  if (max_degree < 1) throw ValidationError("Hochschild cutoff must be >= 1");
  return homology_dims(HochschildComplex(algebra, max_degree, variant).complex());
}

const DegreeVerdict* TraceCertificate::first_failure() const {
  for (const auto& d : degrees) {
    if (d.kind == VerdictKind::kFailure) return &d;
  }
  return nullptr;
}

namespace {

const std::vector<Monomial>& words_of_length(const CEComplex& ce, std::size_t k) {
  static const std::vector<Monomial> none;
  auto it = ce.basis.by_degree.find(-static_cast<int>(k));
  return it == ce.basis.by_degree.end() ? none : it->second;
}

std::vector<std::size_t> wedge_indices(const Monomial& m) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < m.exponents.size(); ++i) {
    if (m.exponents[i]) out.push_back(i);
  }
  return out;
}

std::string wedge_label(const AssociativeAlgebra& algebra, const Monomial& m) {
  std::string out;
  for (auto i : wedge_indices(m)) out += (out.empty() ? "" : "∧") + algebra.names()[i];
  return out;
}

bool column_is(const SparseMatrix& a, std::size_t j, const Rational& r, const SparseMatrix& b) {
  SparseVector scaled;
  axpy(scaled, r, b.column(j));
  return a.column(j) == scaled;
}

}  // namespace

SparseMatrix antisymmetrization_matrix(const AssociativeAlgebra& algebra, const CEComplex& ce,
                                       const HochschildComplex& target, std::size_t k) {
  (void)algebra;
  const auto& words = words_of_length(ce, k);
  std::vector<SparseVector> cols;
  for (const auto& w : words) {
    std::vector<SparseVector> elements;
    for (auto i : wedge_indices(w)) elements.push_back({{i, Rational(1)}});
    cols.push_back(target.coordinates(k - 1, antisymmetrize(elements)));
  }
  return SparseMatrix::from_columns(target.basis(k - 1).size(), std::move(cols));
}

TraceCertificate certify_chain_map(const AssociativeAlgebra& algebra, std::size_t max_k, HochschildVariant variant) {
  if (max_k < 2) throw ValidationError("certification needs K >= 2");
  const auto lie = LInftyStructure::from_associative(algebra);
  const CEComplex ce = ce_complex(lie, max_k);
  const HochschildComplex target(algebra, max_k - 1, variant);

  TraceCertificate cert;
  cert.variant = variant;
  cert.max_k = max_k;
  std::vector<SparseMatrix> eps(max_k + 1);
  for (std::size_t k = 1; k <= max_k; ++k) eps[k] = antisymmetrization_matrix(algebra, ce, target, k);

  for (std::size_t k = 2; k <= max_k; ++k) {
    const SparseMatrix lhs = target.complex().differential(-static_cast<int>(k - 1)) * eps[k];
    const SparseMatrix rhs = eps[k - 1] * ce.complex.differential(-static_cast<int>(k));
    DegreeVerdict v;
    v.k = k;
    auto fail_at = [&](std::size_t j) {
      v.kind = VerdictKind::kFailure;
      v.witness = TraceWitness{wedge_label(algebra, words_of_length(ce, k)[j]), j, lhs.column(j), rhs.column(j)};
    };
    if (rhs.is_zero()) {
      if (lhs.is_zero()) {
        v.kind = VerdictKind::kVacuous;
      } else {
        std::size_t j = 0;
        while (lhs.column(j).empty()) ++j;
        fail_at(j);
      }
    } else {
      std::size_t j0 = 0;
      while (rhs.column(j0).empty()) ++j0;
      const auto& [i0, value] = *rhs.column(j0).begin();
      const Rational r = lhs.at(i0, j0) / value;
      if (mwb::is_zero(r)) {
        fail_at(j0);
      } else {
        v.kind = VerdictKind::kProportional;
        v.ratio = r;
        for (std::size_t j = 0; j < lhs.cols(); ++j) {
          if (!column_is(lhs, j, r, rhs)) {
            fail_at(j);
            break;
          }
        }
      }
    }
    if (v.kind == VerdictKind::kFailure) v.ratio = Rational(0);
    cert.degrees.push_back(std::move(v));
  }
  cert.success = cert.first_failure() == nullptr;
  if (cert.success) {
    cert.normalization.push_back(Rational(1));
    for (const auto& v : cert.degrees) cert.normalization.push_back(cert.normalization.back() / v.ratio);
  }
  return cert;
}

namespace {

// Greedy homology representatives: cycles independent modulo the given boundaries.
std::vector<SparseVector> homology_representatives(std::size_t dim, const std::vector<SparseVector>& cycles,
                                                   const std::vector<SparseVector>& boundaries) {
  std::vector<SparseVector> span = boundaries;
  std::size_t current = rank_of_columns(dim, span);
  std::vector<SparseVector> reps;
  for (const auto& z : cycles) {
    span.push_back(z);
    const std::size_t r = rank_of_columns(dim, span);
    if (r > current) {
      reps.push_back(z);
      current = r;
    } else {
      span.pop_back();
    }
  }
  return reps;
}

}  // namespace

std::vector<InducedMap> induced_homology_map(const AssociativeAlgebra& algebra, const TraceCertificate& certificate) {
  if (!certificate.success) {
    const auto* f = certificate.first_failure();
    throw ValidationError("certificate failed at degree k = " + std::to_string(f ? f->k : 0) +
                          "; no induced map on homology");
  }
  const std::size_t max_k = certificate.max_k;
  const auto lie = LInftyStructure::from_associative(algebra);
  const CEComplex ce = ce_complex(lie, max_k);
  const HochschildComplex target(algebra, max_k - 1, certificate.variant);

  std::vector<InducedMap> out;
  for (std::size_t k = 1; k < max_k; ++k) {
    const int src_deg = -static_cast<int>(k);
    const int tgt_deg = -static_cast<int>(k - 1);
    const std::size_t src_dim = ce.complex.dim(src_deg);
    const std::size_t tgt_dim = target.complex().dim(tgt_deg);

    const auto src_reps = homology_representatives(src_dim, kernel_basis(ce.complex.differential(src_deg)),
                                                   ce.complex.differential(src_deg - 1).columns());
    const auto tgt_boundaries = target.complex().differential(tgt_deg - 1).columns();
    const auto tgt_reps =
        homology_representatives(tgt_dim, kernel_basis(target.complex().differential(tgt_deg)), tgt_boundaries);

    std::vector<SparseVector> system = tgt_reps;
    system.insert(system.end(), tgt_boundaries.begin(), tgt_boundaries.end());
    const SparseMatrix solver = SparseMatrix::from_columns(tgt_dim, system);
    const SparseMatrix t_k = antisymmetrization_matrix(algebra, ce, target, k).scaled(certificate.normalization[k - 1]);

    InducedMap map;
    map.k = k;
    map.source_dim = src_reps.size();
    map.target_dim = tgt_reps.size();
    std::vector<SparseVector> cols;
    for (const auto& z : src_reps) {
      const auto x = solve(solver, t_k.apply(z));
      if (!x) throw std::logic_error("T_k does not map a CE cycle to a cycle");
      SparseVector col;
      for (const auto& [i, c] : *x) {
        if (i < tgt_reps.size()) col[i] = c;
      }
      cols.push_back(std::move(col));
    }
    map.matrix = SparseMatrix::from_columns(tgt_reps.size(), std::move(cols));
    map.rank = rank(map.matrix);
    out.push_back(std::move(map));
  }
  return out;
}

}  // namespace mwb
