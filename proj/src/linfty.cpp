#include "mwb/linfty.hpp"

#include <algorithm>
#include <functional>

namespace mwb {

RelationError::RelationError(std::string relation, std::vector<std::string> inputs, SparseVector defect)
    : ValidationError([&] {
        std::string msg = relation + " fails on (";
        for (std::size_t i = 0; i < inputs.size(); ++i) msg += (i ? ", " : "") + inputs[i];
        return msg + ")";
      }()),
      relation_(std::move(relation)),
      inputs_(std::move(inputs)),
      defect_(std::move(defect)) {}

int antisymmetry_sign(const GradedSpace& space, std::vector<std::size_t>& inputs) {
  int sign = 1;
  for (std::size_t i = 1; i < inputs.size(); ++i) {
    for (std::size_t j = i; j > 0 && inputs[j] < inputs[j - 1]; --j) {
      const bool both_odd = space[inputs[j]].odd() && space[inputs[j - 1]].odd();
      if (!both_odd) sign = -sign;
      std::swap(inputs[j], inputs[j - 1]);
    }
  }
  for (std::size_t i = 1; i < inputs.size(); ++i) {
    if (inputs[i] == inputs[i - 1] && !space[inputs[i]].odd()) return 0;
  }
  return sign;
}

namespace {

void check_homogeneous(const GradedSpace& space, const SparseVector& v, int degree, const std::string& what) {
  for (const auto& [k, c] : v) {
    if (k >= space.size()) throw ValidationError(what + ": output index out of range");
    if (space[k].degree != degree) {
      throw ValidationError(what + ": output " + space[k].name + " has degree " + std::to_string(space[k].degree) +
                            ", expected " + std::to_string(degree));
    }
  }
}

std::vector<std::string> names_of(const GradedSpace& space, const std::vector<std::size_t>& idx) {
  std::vector<std::string> out;
  for (auto i : idx) out.push_back(space[i].name);
  return out;
}

SparseVector scaled(const SparseVector& v, const Rational& c) {
  SparseVector out;
  axpy(out, c, v);
  return out;
}

}  // namespace

LInftyStructure::LInftyStructure(GradedSpace space, std::map<std::size_t, SparseVector> differential,
                                 const std::vector<BracketEntry>& brackets)
    : space_(std::move(space)) {
  for (auto& [i, v] : differential) {
    if (i >= space_.size()) throw ValidationError("differential input index out of range");
    check_homogeneous(space_, v, space_[i].degree + 1, "d(" + space_[i].name + ")");
    SparseVector clean;
    axpy(clean, Rational(1), v);
    if (!clean.empty()) d_[i] = std::move(clean);
  }
  for (const auto& entry : brackets) {
    const std::size_t arity = entry.inputs.size();
    if (arity < 2) throw ValidationError("brackets need at least two inputs");
    int degree = 2 - static_cast<int>(arity);
    for (auto i : entry.inputs) {
      if (i >= space_.size()) throw ValidationError("bracket input index out of range");
      degree += space_[i].degree;
    }
    const std::string what = "l_" + std::to_string(arity);
    check_homogeneous(space_, entry.value, degree, what);
    std::vector<std::size_t> key = entry.inputs;
    const int sign = antisymmetry_sign(space_, key);
    SparseVector value = scaled(entry.value, Rational(sign));
    if (sign == 0 && !entry.value.empty()) {
      throw ValidationError(what + " must vanish on a repeated even input " + space_[key.front()].name);
    }
    if (value.empty()) continue;
    auto& table = brackets_[arity];
    auto [it, inserted] = table.emplace(key, value);
    if (!inserted && it->second != value) {
      std::string names;
      for (const auto& n : names_of(space_, key)) names += " " + n;
      throw ValidationError(what + " given inconsistently on the inputs" + names);
    }
  }
}

SparseVector LInftyStructure::differential(std::size_t i) const {
  auto it = d_.find(i);
  return it == d_.end() ? SparseVector{} : it->second;
}

SparseVector LInftyStructure::bracket(const std::vector<std::size_t>& inputs) const {
  std::vector<std::size_t> key = inputs;
  const int sign = antisymmetry_sign(space_, key);
  if (sign == 0) return {};
  auto t = brackets_.find(inputs.size());
  if (t == brackets_.end()) return {};
  auto it = t->second.find(key);
  if (it == t->second.end()) return {};
  return scaled(it->second, Rational(sign));
}

std::size_t LInftyStructure::max_arity() const {
  std::size_t m = d_.empty() ? 0 : 1;
  for (const auto& [arity, table] : brackets_) {
    if (!table.empty()) m = std::max(m, arity);
  }
  return m;
}

GradedSpace LInftyStructure::ce_letters() const {
  std::vector<Generator> out;
  for (const auto& g : space_.generators()) out.push_back({"s" + g.name, g.degree - 1});
  return GradedSpace(std::move(out));
}

LInftyStructure LInftyStructure::from_dgla(GradedSpace space, std::map<std::size_t, SparseVector> differential,
                                           const std::vector<BracketEntry>& bracket) {
  for (const auto& e : bracket) {
    if (e.inputs.size() != 2) throw ValidationError("a DG Lie bracket takes exactly two inputs");
  }
  LInftyStructure g(std::move(space), std::move(differential), bracket);
  const GradedSpace& s = g.space_;
  const std::size_t n = s.size();
  auto d = [&](const SparseVector& v) {
    SparseVector out;
    for (const auto& [i, c] : v) axpy(out, c, g.differential(i));
    return out;
  };
  auto br = [&](const SparseVector& x, const SparseVector& y) {
    SparseVector out;
    for (const auto& [i, a] : x) {
      for (const auto& [j, b] : y) axpy(out, a * b, g.bracket({i, j}));
    }
    return out;
  };
  auto e = [](std::size_t i) { return SparseVector{{i, Rational(1)}}; };
  for (std::size_t i = 0; i < n; ++i) {
    const SparseVector dd = d(g.differential(i));
    if (!dd.empty()) throw RelationError("d^2 = 0", names_of(s, {i}), dd);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // d[x,y] = [dx,y] + (-1)^|x| [x,dy]
      SparseVector defect = d(g.bracket({i, j}));
      axpy(defect, Rational(-1), br(g.differential(i), e(j)));
      axpy(defect, Rational(s[i].odd() ? 1 : -1), br(e(i), g.differential(j)));
      if (!defect.empty()) throw RelationError("Leibniz rule", names_of(s, {i, j}), defect);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        // [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]]
        SparseVector defect = br(e(i), g.bracket({j, k}));
        axpy(defect, Rational(-1), br(g.bracket({i, j}), e(k)));
        axpy(defect, Rational(s[i].odd() && s[j].odd() ? 1 : -1), br(e(j), g.bracket({i, k})));
        if (!defect.empty()) throw RelationError("Jacobi identity", names_of(s, {i, j, k}), defect);
      }
    }
  }
  return g;
}

LInftyStructure LInftyStructure::from_associative(const AssociativeAlgebra& algebra) {
  std::vector<Generator> gens;
  for (const auto& name : algebra.names()) gens.push_back({name, 0});
  std::vector<BracketEntry> bracket;
  for (std::size_t i = 0; i < algebra.dim(); ++i) {
    for (std::size_t j = i + 1; j < algebra.dim(); ++j) {
      SparseVector v = algebra.commutator({{i, Rational(1)}}, {{j, Rational(1)}});
      if (!v.empty()) bracket.push_back({{i, j}, std::move(v)});
    }
  }
  return LInftyStructure(GradedSpace(std::move(gens)), {}, bracket);
}

AlgebraElement ce_differential(const LInftyStructure& g, const FreeAlgebra& letters, const Monomial& word) {
  const GradedSpace& space = g.space();
  const GradedSpace& shifted = letters.space();
  std::vector<std::size_t> positions;
  for (std::size_t i = 0; i < word.exponents.size(); ++i) {
    for (unsigned e = 0; e < word.exponents[i]; ++e) positions.push_back(i);
  }
  const std::size_t m = positions.size();
  const std::size_t max_arity = std::min(g.max_arity(), m);
  AlgebraElement out;
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (!chosen.empty()) {
      std::vector<std::size_t> inputs;
      for (auto p : chosen) inputs.push_back(positions[p]);
      const std::size_t arity = inputs.size();
      const SparseVector value = arity == 1 ? g.differential(inputs[0]) : g.bracket(inputs);
      if (!value.empty()) {
        // Décalage: Q_i(sx_1..sx_i) = (-1)^{Σ_j (i-j)|x_j|} s l_i(x_1..x_i).
        int twist = 0;
        for (std::size_t j = 0; j < arity; ++j) twist += static_cast<int>(arity - 1 - j) * space[inputs[j]].degree;
        // Unshuffle moving the chosen letters to the front.
        int koszul = 0;
        for (std::size_t q : chosen) {
          for (std::size_t p = 0; p < q; ++p) {
            if (std::find(chosen.begin(), chosen.end(), p) != chosen.end()) continue;
            if (shifted[positions[p]].odd() && shifted[positions[q]].odd()) ++koszul;
          }
        }
        const Rational sign((twist + koszul) % 2 == 0 ? 1 : -1);
        Monomial rest = word;
        for (auto p : chosen) --rest.exponents[positions[p]];
        AlgebraElement head;
        for (const auto& [k, c] : value) {
          Monomial letter = letters.unit_monomial();
          letter.exponents[k] = 1;
          head.add(letter, sign * c);
        }
        AlgebraElement tail;
        tail.add(rest, Rational(1));
        out = out + letters.multiply(head, tail);
      }
    }
    if (chosen.size() == max_arity) return;
    for (std::size_t p = start; p < m; ++p) {
      chosen.push_back(p);
      rec(p + 1);
      chosen.pop_back();
    }
  };
  rec(0);
  return out;
}

namespace {

ChainComplex assemble(const LInftyStructure& g, const FreeAlgebra& letters, const SymmetricBasis& basis,
                      Verification verification) {
  if (basis.by_degree.empty()) return {};
  const int lo = basis.by_degree.begin()->first;
  const int hi = basis.by_degree.rbegin()->first;
  std::vector<std::vector<std::string>> labels;
  for (int d = lo; d <= hi; ++d) {
    std::vector<std::string> l;
    for (const auto& m : basis.by_degree.at(d)) l.push_back(letters.to_string(m));
    labels.push_back(std::move(l));
  }
  std::vector<SparseMatrix> diffs;
  for (int d = lo; d < hi; ++d) {
    const auto& src = basis.by_degree.at(d);
    const auto& tgt = basis.by_degree.at(d + 1);
    std::map<Monomial, std::size_t> index;
    for (std::size_t i = 0; i < tgt.size(); ++i) index.emplace(tgt[i], i);
    SparseMatrix mat(tgt.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j) {
      for (const auto& [w, c] : ce_differential(g, letters, src[j]).terms) mat.add(index.at(w), j, c);
    }
    diffs.push_back(std::move(mat));
  }
  return ChainComplex(lo, std::move(labels), std::move(diffs), verification);
}

}  // namespace

CEComplex ce_complex(const LInftyStructure& g, std::size_t cutoff) {
  if (cutoff < 1) throw ValidationError("CE cutoff must be >= 1");
  CEComplex out{FreeAlgebra(g.ce_letters()), {}, {}, cutoff};
  out.basis = out.letters.basis_up_to_length(cutoff);
  out.complex = assemble(g, out.letters, out.basis, Verification::kImmediate);

  const auto& letters = out.letters.space().generators();
  const bool complete =
      cutoff >= letters.size() && std::all_of(letters.begin(), letters.end(), [](const Generator& x) { return x.odd(); });
  if (!complete) {
    const std::size_t m = std::max<std::size_t>(g.max_arity(), 1);
    const std::size_t threshold = cutoff + 1 > m ? cutoff + 1 - m : 0;
    for (const auto& [d, list] : out.basis.by_degree) {
      for (const auto& w : list) {
        if (w.word_length() >= threshold) {
          out.complex.flag_degree(d);
          break;
        }
      }
    }
  }
  return out;
}

std::optional<SquareZeroWitness> check_linfty(const LInftyStructure& g, std::size_t cutoff) {
  if (cutoff < 1) throw ValidationError("CE cutoff must be >= 1");
  const FreeAlgebra letters(g.ce_letters());
  return verify_square_zero(assemble(g, letters, letters.basis_up_to_length(cutoff), Verification::kDeferred));
}

}  // namespace mwb
