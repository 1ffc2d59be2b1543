#include "mwb/operad_complex.hpp"

#include <algorithm>
#include <string>

namespace mwb {

TreeChain TreeChain::basis(const Tree& tree, Rational coefficient) {
  TreeChain c;
  c.add(tree, coefficient);
  return c;
}

void TreeChain::add(const Tree& tree, const Rational& coefficient) {
  if (mwb::is_zero(coefficient)) return;
  auto [it, inserted] = terms.try_emplace(tree, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (mwb::is_zero(it->second)) terms.erase(it);
  }
}

TreeChain operator+(const TreeChain& lhs, const TreeChain& rhs) {
  TreeChain out = lhs;
  for (const auto& [t, c] : rhs.terms) out.add(t, c);
  return out;
}

TreeChain operator*(const Rational& scalar, const TreeChain& chain) {
  TreeChain out;
  for (const auto& [t, c] : chain.terms) out.add(t, scalar * c);
  return out;
}

TreeChain split_differential(const TreeChain& chain) {
  TreeChain out;
  for (const auto& [t, c] : chain.terms) {
    for (const auto& s : splittings(t)) out.add(s.tree, s.sign * c);
  }
  return out;
}

TreeChain insertion(const TreeChain& upper, const Label& at, const TreeChain& lower) {
  TreeChain out;
  for (const auto& [t1, c1] : upper.terms) {
    for (const auto& [t2, c2] : lower.terms) {
      const auto composite = compose_oriented(t1, at, t2);
      out.add(composite.tree, composite.sign * c1 * c2);
    }
  }
  return out;
}

LeafSet numbered_leaves(std::size_t s) {
  LeafSet out;
  for (std::size_t i = 1; i <= s; ++i) out.push_back(std::to_string(i));
  std::sort(out.begin(), out.end());
  return out;
}

LComplex LComplex::build(std::size_t arity) {
  if (arity < 2) throw ValidationError("L(s) needs arity s >= 2");
  if (arity > 9) throw ValidationError("L(s) is limited to arity <= 9 (single-character leaf labels)");
  LComplex out;
  out.arity_ = arity;
  const LeafSet leaves = numbered_leaves(arity);
  for (std::size_t k = 0; k + 2 <= arity; ++k) out.by_edges_.push_back(enumerate_trees(leaves, k));

  std::vector<std::vector<std::string>> bases;
  for (const auto& trees : out.by_edges_) {
    std::vector<std::string> labels;
    for (const auto& t : trees) labels.push_back(to_string(t));
    bases.push_back(std::move(labels));
  }
  std::vector<SparseMatrix> diffs;
  for (std::size_t k = 0; k + 1 < out.by_edges_.size(); ++k) {
    const auto& source = out.by_edges_[k];
    const auto& target = out.by_edges_[k + 1];
    std::map<Tree, std::size_t> index;
    for (std::size_t i = 0; i < target.size(); ++i) index.emplace(target[i], i);
    SparseMatrix d(target.size(), source.size());
    for (std::size_t j = 0; j < source.size(); ++j) {
      for (const auto& s : splittings(source[j])) d.add(index.at(s.tree), j, Rational(s.sign));
    }
    diffs.push_back(std::move(d));
  }
  out.complex_ = ChainComplex(2 - static_cast<int>(arity), std::move(bases), std::move(diffs));
  return out;
}

int LComplex::degree_of(std::size_t edges) const {
  return 2 - static_cast<int>(arity_) + static_cast<int>(edges) - shift_;
}

const std::vector<Tree>& LComplex::trees(int degree) const {
  static const std::vector<Tree> none;
  const int k = degree - degree_of(0);
  if (k < 0 || k >= static_cast<int>(by_edges_.size())) return none;
  return by_edges_[static_cast<std::size_t>(k)];
}

SparseMatrix LComplex::action(const std::vector<std::size_t>& permutation, int degree) const {
  if (permutation.size() != arity_) throw ValidationError("permutation length must equal the arity");
  std::vector<std::size_t> seen = permutation;
  std::sort(seen.begin(), seen.end());
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (seen[i] != i) throw ValidationError("not a permutation of 0..s-1");
  }
  std::map<Label, Label> mapping;
  for (std::size_t i = 0; i < arity_; ++i) mapping.emplace(std::to_string(i + 1), std::to_string(permutation[i] + 1));
  const int twist = (sign_power_ % 2 != 0) ? sorting_sign(permutation) : 1;

  const auto& basis = trees(degree);
  std::map<Tree, std::size_t> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);
  SparseMatrix m(basis.size(), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const auto image = relabel(basis[j], mapping);
    m.add(index.at(image.tree), j, Rational(image.sign * twist));
  }
  return m;
}

LComplex LComplex::shifted(int n, ShiftConvention convention) const {
  if (n < 1) throw ValidationError("ambient dimension n must be >= 1");
  LComplex out = *this;
  const int s = static_cast<int>(arity_);
  // X[m] has X[m]^d = X^(d+m): degrees move down by m.
  const int m = convention == ShiftConvention::kArityTimesDimension ? n * (s - 1) : s * (1 - n);
  out.shift_ += m;
  if (convention == ShiftConvention::kArityTimesDimension) out.sign_power_ += n;
  out.complex_ = complex_.shifted(-m);
  return out;
}

ChainComplex build_L_complex(std::size_t arity) { return LComplex::build(arity).complex(); }

std::vector<DegreeHomology> L_homology(std::size_t arity) { return homology_dims(build_L_complex(arity)); }

int stratum_codim(const Tree& tree) {
  if (tree.is_degenerate()) throw ValidationError("the degenerate tree indexes no stratum");
  return static_cast<int>(tree.edge_count());
}

int stratum_dim(const Tree& tree, int n) {
  if (tree.is_degenerate()) throw ValidationError("the degenerate tree indexes no stratum");
  if (n < 1) throw ValidationError("ambient dimension n must be >= 1");
  int dim = 0;
  for (const auto& v : tree.vertex_sets()) {
    const int arity = static_cast<int>(tree.inputs(v).size());
    dim += n * arity - n - 1;
  }
  return dim;
}

Stratum stratum(const Tree& tree, int n) { return {tree, n, stratum_dim(tree, n), stratum_codim(tree)}; }

bool incidence(const Tree& tree, const Tree& other) {
  if (tree.leaves() != other.leaves()) throw ValidationError("incidence needs trees on the same leaf set");
  if (other.edge_count() != tree.edge_count() + 1) return false;
  const auto all = splittings(tree);
  return std::any_of(all.begin(), all.end(), [&](const Splitting& s) { return s.tree == other; });
}

}  // namespace mwb
