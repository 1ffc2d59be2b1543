#include <gtest/gtest.h>

#include "mwb/linfty.hpp"
#include "oracle/dense.hpp"

using namespace mwb;

namespace {

SparseVector vec(std::initializer_list<std::pair<std::size_t, int>> entries) {
  SparseVector v;
  for (const auto& [i, c] : entries) axpy(v, Rational(c), SparseVector{{i, Rational(1)}});
  return v;
}

// e=0, f=1, h=2
LInftyStructure sl2() {
  return LInftyStructure::from_dgla(GradedSpace({{"e", 0}, {"f", 0}, {"h", 0}}), {},
                                    {{{0, 1}, vec({{2, 1}})}, {{2, 0}, vec({{0, 2}})}, {{2, 1}, vec({{1, -2}})}});
}

// Oracle: classical Chevalley–Eilenberg homology of an ungraded Lie algebra on Λ^k,
// d(x_1∧…∧x_k) = Σ_{i<j} (-1)^{i+j} [x_i,x_j] ∧ x_1 … x̂_i … x̂_j … x_k.
std::vector<std::size_t> classical_ce_homology(std::size_t n, const std::function<SparseVector(std::size_t, std::size_t)>& br) {
  std::vector<std::vector<std::vector<std::size_t>>> wedges(n + 1);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) s.push_back(i);
    }
    wedges[s.size()].push_back(s);
  }
  for (auto& w : wedges) std::sort(w.begin(), w.end());
  // wedge with sign from sorting
  auto normalize = [](std::vector<std::size_t> v, int& sign) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::size_t j = 0; j + 1 < v.size(); ++j) {
        if (v[j] > v[j + 1]) {
          std::swap(v[j], v[j + 1]);
          sign = -sign;
        }
      }
    }
    for (std::size_t j = 0; j + 1 < v.size(); ++j) {
      if (v[j] == v[j + 1]) sign = 0;
    }
    return v;
  };
  std::vector<oracle::Dense> maps;  // maps[k-1]: Λ^k -> Λ^(k-1), stored as map from k to k-1
  std::vector<std::size_t> dims;
  for (std::size_t k = 0; k <= n; ++k) dims.push_back(wedges[k].size());
  // Order spaces descending in k so the oracle sees C_n -> ... -> C_0 as consecutive maps.
  std::vector<std::size_t> rev_dims(dims.rbegin(), dims.rend());
  for (std::size_t k = n; k >= 1; --k) {
    oracle::Dense m = oracle::zeros(wedges[k - 1].size(), wedges[k].size());
    for (std::size_t c = 0; c < wedges[k].size(); ++c) {
      const auto& x = wedges[k][c];
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
          const int base = ((i + 1 + j + 1) % 2 == 0) ? 1 : -1;
          std::vector<std::size_t> rest;
          for (std::size_t t = 0; t < k; ++t) {
            if (t != i && t != j) rest.push_back(x[t]);
          }
          for (const auto& [z, coef] : br(x[i], x[j])) {
            std::vector<std::size_t> w{z};
            w.insert(w.end(), rest.begin(), rest.end());
            int sign = base;
            const auto sorted = normalize(w, sign);
            if (sign == 0) continue;
            const auto row = std::lower_bound(wedges[k - 1].begin(), wedges[k - 1].end(), sorted) - wedges[k - 1].begin();
            m[static_cast<std::size_t>(row)][c] += sign * coef;
          }
        }
      }
    }
    maps.push_back(m);
  }
  auto h = oracle::dense_homology(rev_dims, maps);
  return std::vector<std::size_t>(h.rbegin(), h.rend());  // indexed by k
}

// CE homology by word length for a structure concentrated in degree 0 (word length = -degree).
std::vector<std::size_t> ce_by_length(const LInftyStructure& g, std::size_t cutoff) {
  const auto c = ce_complex(g, cutoff);
  std::vector<std::size_t> out(cutoff + 1, 0);
  for (const auto& h : homology_dims(c.complex)) out[static_cast<std::size_t>(-h.degree)] = h.dim;
  return out;
}

// Valid L∞ with nonzero l_3: a,b,c,c',w in degree 0, u in degree -1;
// [a,b] = c', [c',c] = w, d u = w, l_3(a,b,c) = sign·u.
LInftyStructure l3_example(int sign) {
  const GradedSpace space({{"a", 0}, {"b", 0}, {"c", 0}, {"cp", 0}, {"w", 0}, {"u", -1}});
  return LInftyStructure(space, {{5, vec({{4, 1}})}},
                         {{{0, 1}, vec({{3, 1}})}, {{3, 2}, vec({{4, 1}})}, {{0, 1, 2}, vec({{5, sign}})}});
}

// sl2 ⊗ Λ with Λ = span{1, a, b}, |a| = -1, |b| = 0, ab = b² = 0, da = b. Index 3*t + x.
LInftyStructure sl2_dg() {
  std::vector<Generator> gens;
  const char* xs[] = {"e", "f", "h"};
  const char* ts[] = {"", "a", "b"};
  const int deg[] = {0, -1, 0};
  for (int t = 0; t < 3; ++t) {
    for (int x = 0; x < 3; ++x) gens.push_back({std::string(xs[x]) + ts[t], deg[t]});
  }
  const LInftyStructure base = sl2();
  std::map<std::size_t, SparseVector> d;
  for (std::size_t x = 0; x < 3; ++x) d[3 + x] = SparseVector{{6 + x, Rational(1)}};
  // Products in Λ: 1·1 = 1, 1·a = a, 1·b = b; the rest vanish.
  auto product = [](int s, int t) -> int {
    if (s == 0) return t;
    if (t == 0) return s;
    return -1;
  };
  std::vector<BracketEntry> bracket;
  for (int s = 0; s < 3; ++s) {
    for (int t = 0; t < 3; ++t) {
      const int st = product(s, t);
      if (st < 0) continue;
      for (std::size_t x = 0; x < 3; ++x) {
        for (std::size_t y = 0; y < 3; ++y) {
          const SparseVector v = base.bracket({x, y});
          if (v.empty()) continue;
          // [x⊗λ, y⊗μ] = [x,y] ⊗ λμ; |x| = 0 so no sign.
          SparseVector out;
          for (const auto& [z, c] : v) out[3 * static_cast<std::size_t>(st) + z] = c;
          bracket.push_back({{3 * static_cast<std::size_t>(s) + x, 3 * static_cast<std::size_t>(t) + y}, out});
        }
      }
    }
  }
  return LInftyStructure::from_dgla(GradedSpace(gens), d, bracket);
}

}  // namespace

TEST(FromDgla, AcceptsAbelianAndSl2) {
  const auto ab = LInftyStructure::from_dgla(GradedSpace({{"x", 0}, {"y", 0}}), {}, {});
  EXPECT_EQ(ab.max_arity(), 0u);
  const auto g = sl2();
  EXPECT_EQ(g.bracket({1, 0}), vec({{2, -1}}));
  EXPECT_EQ(g.bracket({0, 0}), SparseVector{});
  EXPECT_EQ(g.max_arity(), 2u);
}

TEST(FromDgla, PerturbedSl2RejectedWithWitness) {
  try {
    LInftyStructure::from_dgla(GradedSpace({{"e", 0}, {"f", 0}, {"h", 0}}), {},
                               {{{0, 1}, vec({{2, 1}, {0, 1}})}, {{2, 0}, vec({{0, 2}})}, {{2, 1}, vec({{1, -2}})}});
    FAIL() << "expected Jacobi failure";
  } catch (const RelationError& e) {
    EXPECT_EQ(e.relation(), "Jacobi identity");
    EXPECT_EQ(e.inputs().size(), 3u);
    EXPECT_FALSE(e.defect().empty());
  }
}

TEST(FromDgla, ValidationOfShapeAndDegrees) {
  const GradedSpace s({{"x", 0}, {"y", 1}});
  EXPECT_THROW(LInftyStructure(s, {{0, vec({{0, 1}})}}, {}), ValidationError);      // d of degree 0
  EXPECT_THROW(LInftyStructure(s, {}, {{{0, 0}, vec({{0, 1}})}}), ValidationError);  // l_2(x,x), x even
  EXPECT_THROW(LInftyStructure(s, {}, {{{0, 1}, vec({{0, 1}})}}), ValidationError);  // [x,y] has degree 1
  EXPECT_THROW(LInftyStructure(s, {}, {{{0, 1}, vec({{1, 1}})}, {{1, 0}, vec({{1, 1}})}}), ValidationError);
  EXPECT_NO_THROW(LInftyStructure(s, {}, {{{0, 1}, vec({{1, 1}})}, {{1, 0}, vec({{1, -1}})}}));
  // Odd element may bracket with itself.
  EXPECT_NO_THROW(LInftyStructure(GradedSpace({{"z", 0}, {"y", 1}}), {}, {{{1, 1}, vec({})}}));
  EXPECT_THROW(LInftyStructure::from_dgla(s, {{0, vec({{1, 1}})}}, {{{0, 1, 1}, vec({})}}), ValidationError);
}

TEST(FromDgla, LeibnizAndSquareZeroFailuresNamed) {
  const GradedSpace s({{"x", 0}, {"y", 1}, {"z", 0}});
  try {
    // d x = y, [z, x] = x but [z, y] = 0 breaks Leibniz.
    LInftyStructure::from_dgla(s, {{0, vec({{1, 1}})}}, {{{2, 0}, vec({{0, 1}})}});
    FAIL();
  } catch (const RelationError& e) {
    EXPECT_EQ(e.relation(), "Leibniz rule");
  }
  EXPECT_NO_THROW(LInftyStructure::from_dgla(s, {{0, vec({{1, 1}})}}, {{{2, 0}, vec({{0, 1}})}, {{2, 1}, vec({{1, 1}})}}));
}

TEST(FromAssociative, CommutatorBrackets) {
  EXPECT_EQ(LInftyStructure::from_associative(truncated_polynomial(3)).max_arity(), 0u);
  const auto gl2 = LInftyStructure::from_associative(matrix_algebra(2));
  // E12 = 1, E21 = 2, E11 = 0, E22 = 3
  EXPECT_EQ(gl2.bracket({1, 2}), vec({{0, 1}, {3, -1}}));
  const auto b = LInftyStructure::from_associative(upper_triangular_2x2());
  std::set<std::size_t> derived;
  for (const auto& [key, v] : b.brackets().at(2)) {
    for (const auto& [k, c] : v) derived.insert(k);
  }
  EXPECT_EQ(derived, std::set<std::size_t>{1});
}

TEST(CEComplex, AbelianLineIsExterior) {
  const auto g = LInftyStructure::from_dgla(GradedSpace({{"x", 0}}), {}, {});
  const auto c = ce_complex(g, 4);
  const auto h = homology_dims(c.complex);
  ASSERT_EQ(h.size(), 2u);
  EXPECT_EQ(h[0].degree, -1);
  EXPECT_EQ(h[0].dim, 1u);
  EXPECT_EQ(h[1].dim, 1u);
  EXPECT_FALSE(h[0].truncation_affected);
}

TEST(CEComplex, Sl2AndTwoDimensionalNonabelian) {
  EXPECT_EQ(ce_by_length(sl2(), 3), (std::vector<std::size_t>{1, 0, 0, 1}));
  const auto aff = LInftyStructure::from_dgla(GradedSpace({{"x", 0}, {"y", 0}}), {}, {{{0, 1}, vec({{1, 1}})}});
  EXPECT_EQ(ce_by_length(aff, 2), (std::vector<std::size_t>{1, 1, 0}));
}

TEST(CEComplex, AgreesWithClassicalOracle) {
  struct Case {
    LInftyStructure g;
    std::size_t n;
  };
  std::vector<Case> cases{{sl2(), 3},
                          {LInftyStructure::from_associative(matrix_algebra(2)), 4},
                          {LInftyStructure::from_associative(upper_triangular_2x2()), 3},
                          {LInftyStructure::from_associative(truncated_polynomial(3)), 3}};
  for (const auto& [g, n] : cases) {
    const auto oracle = classical_ce_homology(n, [&](std::size_t i, std::size_t j) { return g.bracket({i, j}); });
    EXPECT_EQ(ce_by_length(g, n), oracle);
  }
  EXPECT_EQ(ce_by_length(LInftyStructure::from_associative(matrix_algebra(2)), 4),
            (std::vector<std::size_t>{1, 1, 0, 1, 1}));
}

TEST(CheckLinfty, HigherBracketExampleAndMutation) {
  const auto good = l3_example(-1);
  EXPECT_EQ(good.max_arity(), 3u);
  for (std::size_t k = 1; k <= 5; ++k) EXPECT_FALSE(check_linfty(good, k).has_value()) << k;

  const auto bad = l3_example(1);
  const auto w = check_linfty(bad, 4);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->basis_label.rfind("sa*sb*sc", 0), 0u);
  // The defect already shows on the three-letter word.
  const FreeAlgebra letters(bad.ce_letters());
  Monomial abc = letters.unit_monomial();
  abc.exponents = {1, 1, 1, 0, 0, 0};
  AlgebraElement twice;
  for (const auto& [m, c] : ce_differential(bad, letters, abc).terms) {
    twice = twice + c * ce_differential(bad, letters, m);
  }
  EXPECT_FALSE(twice.is_zero());
  EXPECT_THROW(ce_complex(bad, 4), SquareZeroError);
}

TEST(CheckLinfty, BracketsShortenWordsByArityMinusOne) {
  const auto g = l3_example(-1);
  const FreeAlgebra letters(g.ce_letters());
  Monomial abc = letters.unit_monomial();
  abc.exponents = {1, 1, 1, 0, 0, 0};
  std::set<std::size_t> lengths;
  for (const auto& [m, c] : ce_differential(g, letters, abc).terms) lengths.insert(m.word_length());
  EXPECT_EQ(lengths, (std::set<std::size_t>{1, 2}));
}

TEST(CheckLinfty, GradedDglaPassesAndMutationFails) {
  const auto g = sl2_dg();
  for (std::size_t k = 1; k <= 4; ++k) EXPECT_FALSE(check_linfty(g, k).has_value()) << k;

  // Drop the Leibniz-compatible differential on one element.
  auto d = g.differential();
  d.erase(3);
  std::vector<BracketEntry> bracket;
  for (const auto& [key, v] : g.brackets().at(2)) bracket.push_back({key, v});
  const LInftyStructure broken(g.space(), d, bracket);
  EXPECT_TRUE(check_linfty(broken, 2).has_value());
  EXPECT_THROW(LInftyStructure::from_dgla(g.space(), d, bracket), RelationError);
}

TEST(CEComplex, StableUnderCutoffGrowth) {
  const auto g = sl2_dg();
  const auto h3 = homology_dims(ce_complex(g, 3).complex);
  const auto h4 = homology_dims(ce_complex(g, 4).complex);
  std::map<int, std::size_t> by4;
  for (const auto& h : h4) by4[h.degree] = h.dim;
  std::size_t compared = 0;
  for (const auto& h : h3) {
    if (h.truncation_affected) continue;
    EXPECT_EQ(h.dim, by4[h.degree]) << h.degree;
    ++compared;
  }
  EXPECT_GT(compared, 0u);
}
