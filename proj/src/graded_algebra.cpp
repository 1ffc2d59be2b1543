#include "mwb/graded_algebra.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace mwb {

GradedSpace::GradedSpace(std::vector<Generator> generators) : generators_(std::move(generators)) {
  std::set<std::string> seen;
  for (const auto& g : generators_) {
    if (g.name.empty()) throw ValidationError("generator names must be non-empty");
    if (!seen.insert(g.name).second) throw ValidationError("duplicate generator name \"" + g.name + "\"");
  }
}

std::optional<std::size_t> GradedSpace::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (generators_[i].name == name) return i;
  }
  return std::nullopt;
}

GradedSpace GradedSpace::dual() const {
  std::vector<Generator> out;
  for (const auto& g : generators_) out.push_back({g.name + "^", -g.degree});
  return GradedSpace(std::move(out));
}

GradedSpace GradedSpace::shifted(int k) const {
  std::vector<Generator> out = generators_;
  for (auto& g : out) g.degree -= k;
  return GradedSpace(std::move(out));
}

std::size_t Monomial::word_length() const { return std::accumulate(exponents.begin(), exponents.end(), std::size_t{0}); }

void AlgebraElement::add(const Monomial& m, const Rational& c) {
  if (mwb::is_zero(c)) return;
  auto [it, inserted] = terms.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (mwb::is_zero(it->second)) terms.erase(it);
  }
}

AlgebraElement operator+(const AlgebraElement& x, const AlgebraElement& y) {
  AlgebraElement out = x;
  for (const auto& [m, c] : y.terms) out.add(m, c);
  return out;
}

AlgebraElement operator-(const AlgebraElement& x, const AlgebraElement& y) {
  AlgebraElement out = x;
  for (const auto& [m, c] : y.terms) out.add(m, -c);
  return out;
}

AlgebraElement operator*(const Rational& c, const AlgebraElement& x) {
  AlgebraElement out;
  for (const auto& [m, v] : x.terms) out.add(m, c * v);
  return out;
}

std::size_t SymmetricBasis::dim(int degree) const {
  auto it = by_degree.find(degree);
  return it == by_degree.end() ? 0 : it->second.size();
}

FreeAlgebra::FreeAlgebra(GradedSpace space) : space_(std::move(space)) {}

Monomial FreeAlgebra::unit_monomial() const { return Monomial{std::vector<unsigned>(space_.size(), 0)}; }

AlgebraElement FreeAlgebra::one() const {
  AlgebraElement e;
  e.add(unit_monomial(), Rational(1));
  return e;
}

AlgebraElement FreeAlgebra::generator(std::size_t index) const {
  if (index >= space_.size()) throw ValidationError("generator index out of range");
  Monomial m = unit_monomial();
  m.exponents[index] = 1;
  AlgebraElement e;
  e.add(m, Rational(1));
  return e;
}

AlgebraElement FreeAlgebra::generator(const std::string& name) const {
  auto i = space_.index_of(name);
  if (!i) throw ValidationError("unknown generator \"" + name + "\"");
  return generator(*i);
}

int FreeAlgebra::degree(const Monomial& m) const {
  int d = 0;
  for (std::size_t i = 0; i < space_.size(); ++i) d += static_cast<int>(m.exponents[i]) * space_[i].degree;
  return d;
}

int FreeAlgebra::monomial_product(const Monomial& a, const Monomial& b, Monomial& out) const {
  const std::size_t n = space_.size();
  out.exponents.assign(n, 0);
  int swaps = 0;
  // Odd letters of a that sit to the right of index i in canonical order.
  int odd_in_a_after = 0;
  for (std::size_t i = n; i-- > 0;) {
    const bool odd = space_[i].odd();
    if (odd && a.exponents[i] && b.exponents[i]) return 0;
    if (odd && b.exponents[i]) swaps += odd_in_a_after;
    if (odd && a.exponents[i]) ++odd_in_a_after;
    out.exponents[i] = a.exponents[i] + b.exponents[i];
  }
  return swaps % 2 == 0 ? 1 : -1;
}

AlgebraElement FreeAlgebra::multiply(const AlgebraElement& x, const AlgebraElement& y) const {
  AlgebraElement out;
  Monomial m;
  for (const auto& [a, ca] : x.terms) {
    for (const auto& [b, cb] : y.terms) {
      const int sign = monomial_product(a, b, m);
      if (sign != 0) out.add(m, sign * ca * cb);
    }
  }
  return out;
}

std::optional<int> FreeAlgebra::homogeneous_degree(const AlgebraElement& x) const {
  std::optional<int> d;
  for (const auto& [m, c] : x.terms) {
    const int dm = degree(m);
    if (d && *d != dm) return std::nullopt;
    d = dm;
  }
  return d;
}

AlgebraElement FreeAlgebra::derivation(int degree, const std::map<std::size_t, AlgebraElement>& on_generators,
                                       const AlgebraElement& x) const {
  AlgebraElement out;
  for (const auto& [m, c] : x.terms) {
    // Word g_0^{e_0} g_1^{e_1} ...; D hits each letter after passing the letters to its left.
    int prefix_degree = 0;
    for (std::size_t i = 0; i < space_.size(); ++i) {
      const unsigned e = m.exponents[i];
      if (e == 0) continue;
      auto it = on_generators.find(i);
      if (it != on_generators.end()) {
        Monomial left = unit_monomial();
        Monomial right = unit_monomial();
        for (std::size_t j = 0; j < i; ++j) left.exponents[j] = m.exponents[j];
        right.exponents[i] = e - 1;
        for (std::size_t j = i + 1; j < space_.size(); ++j) right.exponents[j] = m.exponents[j];
        // d(g^e) = e g^{e-1} D(g) for even g; odd g has e = 1.
        const int sign = (degree * prefix_degree) % 2 == 0 ? 1 : -1;
        AlgebraElement l, r;
        l.add(left, Rational(1));
        r.add(right, Rational(1));
        const AlgebraElement term = multiply(multiply(l, it->second), r);
        out = out + (Rational(sign * static_cast<int>(e)) * c) * term;
      }
      prefix_degree += static_cast<int>(e) * space_[i].degree;
    }
  }
  return out;
}

namespace {

void sort_basis(SymmetricBasis& b) {
  for (auto& [d, list] : b.by_degree) {
    std::sort(list.begin(), list.end(), [](const Monomial& x, const Monomial& y) {
      const auto lx = x.word_length(), ly = y.word_length();
      if (lx != ly) return lx < ly;
      return x.exponents > y.exponents;
    });
  }
}

}  // namespace

SymmetricBasis FreeAlgebra::basis_up_to_length(std::size_t cutoff) const {
  SymmetricBasis out;
  out.cutoff = cutoff;
  Monomial m = unit_monomial();
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t length) {
    if (i == space_.size()) {
      out.by_degree[degree(m)].push_back(m);
      return;
    }
    const unsigned max_e = space_[i].odd() ? 1u : static_cast<unsigned>(cutoff - length);
    for (unsigned e = 0; e <= max_e && length + e <= cutoff; ++e) {
      m.exponents[i] = e;
      rec(i + 1, length + e);
    }
    m.exponents[i] = 0;
  };
  rec(0, 0);
  for (int d = out.by_degree.begin()->first; d < out.by_degree.rbegin()->first; ++d) out.by_degree[d];
  sort_basis(out);
  return out;
}

SymmetricBasis FreeAlgebra::basis_in_window(int lo, int hi, std::optional<std::size_t> cutoff) const {
  if (lo > hi) throw ValidationError("empty degree window");
  if (cutoff) {
    SymmetricBasis all = basis_up_to_length(*cutoff);
    SymmetricBasis out;
    out.cutoff = cutoff;
    for (auto& [d, list] : all.by_degree) {
      if (d >= lo && d <= hi) out.by_degree[d] = std::move(list);
    }
    for (int d = lo; d <= hi; ++d) out.by_degree[d];
    return out;
  }
  int sign = 0;
  for (const auto& g : space_.generators()) {
    if (g.odd()) continue;
    if (g.degree == 0) throw ValidationError("infinite graded piece: generator \"" + g.name + "\" has degree 0");
    const int s = g.degree > 0 ? 1 : -1;
    if (sign != 0 && s != sign) {
      throw ValidationError("infinite graded piece: even generators of both signs (generator \"" + g.name + "\")");
    }
    sign = s;
  }
  int odd_neg = 0, odd_pos = 0;
  for (const auto& g : space_.generators()) {
    if (!g.odd()) continue;
    (g.degree < 0 ? odd_neg : odd_pos) += g.degree;
  }
  // Even part E must satisfy lo - odd_pos <= E <= hi - odd_neg.
  const int even_lo = lo - odd_pos;
  const int even_hi = hi - odd_neg;

  SymmetricBasis out;
  Monomial m = unit_monomial();
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int deg) {
    if (i == space_.size()) {
      if (deg >= lo && deg <= hi) out.by_degree[deg].push_back(m);
      return;
    }
    const Generator& g = space_[i];
    if (g.odd()) {
      for (unsigned e = 0; e <= 1; ++e) {
        m.exponents[i] = e;
        rec(i + 1, deg + static_cast<int>(e) * g.degree);
      }
    } else {
      for (unsigned e = 0;; ++e) {
        // Bound on the even letters only: their partial sum is monotone in e.
        int even_part = 0;
        for (std::size_t j = 0; j < i; ++j) {
          if (!space_[j].odd()) even_part += static_cast<int>(m.exponents[j]) * space_[j].degree;
        }
        even_part += static_cast<int>(e) * g.degree;
        if (even_part > even_hi || even_part < even_lo) break;
        m.exponents[i] = e;
        rec(i + 1, deg + static_cast<int>(e) * g.degree);
      }
    }
    m.exponents[i] = 0;
  };
  rec(0, 0);
  for (int d = lo; d <= hi; ++d) out.by_degree[d];
  sort_basis(out);
  return out;
}

std::string FreeAlgebra::to_string(const Monomial& m) const {
  std::string out;
  for (std::size_t i = 0; i < space_.size(); ++i) {
    if (m.exponents[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += space_[i].name;
    if (m.exponents[i] > 1) out += "^" + std::to_string(m.exponents[i]);
  }
  return out.empty() ? "1" : out;
}

std::string FreeAlgebra::to_string(const AlgebraElement& x) const {
  if (x.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : x.terms) {
    if (!out.empty()) out += " + ";
    out += "(" + mwb::to_string(c) + ")" + to_string(m);
  }
  return out;
}

ChainComplex multiplication_operator(const FreeAlgebra& algebra, const AlgebraElement& omega,
                                     const SymmetricBasis& basis) {
  if (!omega.is_zero()) {
    const auto d = algebra.homogeneous_degree(omega);
    if (!d) throw ValidationError("multiplication operator needs a homogeneous element");
    if (*d != 1) throw ValidationError("multiplication operator needs an element of degree +1, got " + std::to_string(*d));
  }
  if (basis.by_degree.empty()) return {};
  const int lo = basis.by_degree.begin()->first;
  const int hi = basis.by_degree.rbegin()->first;
  auto list = [&](int d) -> const std::vector<Monomial>& {
    static const std::vector<Monomial> none;
    auto it = basis.by_degree.find(d);
    return it == basis.by_degree.end() ? none : it->second;
  };
  std::vector<std::vector<std::string>> labels;
  for (int d = lo; d <= hi; ++d) {
    std::vector<std::string> l;
    for (const auto& m : list(d)) l.push_back(algebra.to_string(m));
    labels.push_back(std::move(l));
  }
  std::vector<SparseMatrix> diffs;
  std::set<int> dropped;
  for (int d = lo; d < hi; ++d) {
    const auto& src = list(d);
    const auto& tgt = list(d + 1);
    std::map<Monomial, std::size_t> index;
    for (std::size_t i = 0; i < tgt.size(); ++i) index.emplace(tgt[i], i);
    SparseMatrix m(tgt.size(), src.size());
    Monomial prod;
    for (std::size_t j = 0; j < src.size(); ++j) {
      for (const auto& [w, c] : omega.terms) {
        const int sign = algebra.monomial_product(w, src[j], prod);
        if (sign == 0) continue;
        auto it = index.find(prod);
        if (it == index.end()) {
          dropped.insert(d);
          continue;
        }
        m.add(it->second, j, sign * c);
      }
    }
    diffs.push_back(std::move(m));
  }
  ChainComplex out(lo, std::move(labels), std::move(diffs));
  for (int d : dropped) out.flag_degree(d);
  // Products out of the top degree are never represented.
  bool top_maps_out = false;
  Monomial prod;
  for (const auto& m : list(hi)) {
    for (const auto& [w, c] : omega.terms) {
      if (algebra.monomial_product(w, m, prod) != 0) top_maps_out = true;
    }
  }
  if (top_maps_out) out.mark_truncated_above();
  return out;
}

}  // namespace mwb
