#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "mwb/operad_complex.hpp"
#include "oracle/dense.hpp"

using namespace mwb;

namespace {

std::size_t factorial(std::size_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

bool strict_superset_by_one(const Tree& small, const Tree& big) {
  if (big.edge_count() != small.edge_count() + 1) return false;
  return std::includes(big.edges().begin(), big.edges().end(), small.edges().begin(), small.edges().end());
}

// Oracle differential: scan every (k+1)-edge tree, keep the refinements of the
// source, sign = (-1)^(position of the extra cluster in the sorted edge list).
oracle::Dense oracle_differential(const std::vector<Tree>& source, const std::vector<Tree>& target) {
  oracle::Dense d = oracle::zeros(target.size(), source.size());
  for (std::size_t j = 0; j < source.size(); ++j) {
    for (std::size_t i = 0; i < target.size(); ++i) {
      if (!strict_superset_by_one(source[j], target[i])) continue;
      const auto& e = target[i].edges();
      std::size_t pos = 0;
      while (pos < e.size() && std::binary_search(source[j].edges().begin(), source[j].edges().end(), e[pos])) ++pos;
      d[i][j] = Rational(pos % 2 == 0 ? 1 : -1);
    }
  }
  return d;
}

std::vector<Tree> all_trees(const LeafSet& leaves) {
  if (leaves.size() == 1) return {Tree::degenerate(leaves.front())};
  std::vector<Tree> out;
  for (std::size_t k = 0; k + 2 <= leaves.size(); ++k) {
    auto ts = enumerate_trees(leaves, k);
    out.insert(out.end(), ts.begin(), ts.end());
  }
  return out;
}

LeafSet labels(const std::string& prefix, std::size_t n) {
  LeafSet out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

}  // namespace

TEST(LComplex, DimensionsAndDegrees) {
  const auto l2 = LComplex::build(2);
  EXPECT_EQ(l2.complex().lowest(), 0);
  EXPECT_EQ(l2.complex().highest(), 0);
  EXPECT_EQ(l2.complex().dim(0), 1u);

  const auto l3 = LComplex::build(3);
  EXPECT_EQ(l3.complex().lowest(), -1);
  EXPECT_EQ(l3.complex().dim(-1), 1u);
  EXPECT_EQ(l3.complex().dim(0), 3u);

  const auto l4 = LComplex::build(4);
  EXPECT_EQ(l4.complex().dim(-2), 1u);
  EXPECT_EQ(l4.complex().dim(-1), 10u);
  EXPECT_EQ(l4.complex().dim(0), 15u);
  EXPECT_THROW(LComplex::build(1), ValidationError);
}

TEST(LComplex, SquareZeroUpToAritySix) {
  for (std::size_t s = 2; s <= 6; ++s) EXPECT_FALSE(verify_square_zero(build_L_complex(s)).has_value()) << s;
}

TEST(LComplex, DifferentialMatchesOracleMatrices) {
  for (std::size_t s = 3; s <= 5; ++s) {
    const auto l = LComplex::build(s);
    const auto leaves = numbered_leaves(s);
    for (std::size_t k = 0; k + 3 <= s; ++k) {
      const auto src = enumerate_trees(leaves, k);
      const auto tgt = enumerate_trees(leaves, k + 1);
      EXPECT_EQ(oracle::to_dense(l.complex().differential(l.degree_of(k))), oracle_differential(src, tgt));
    }
  }
}

TEST(LComplex, HomologyConcentratedInDegreeZero) {
  for (std::size_t s = 2; s <= 5; ++s) {
    const auto leaves = numbered_leaves(s);
    std::vector<std::size_t> dims;
    std::vector<oracle::Dense> maps;
    for (std::size_t k = 0; k + 2 <= s; ++k) dims.push_back(enumerate_trees(leaves, k).size());
    for (std::size_t k = 0; k + 3 <= s; ++k) {
      maps.push_back(oracle_differential(enumerate_trees(leaves, k), enumerate_trees(leaves, k + 1)));
    }
    const auto oracle_h = oracle::dense_homology(dims, maps);
    const auto h = L_homology(s);
    ASSERT_EQ(h.size(), oracle_h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
      EXPECT_EQ(h[i].dim, oracle_h[i]);
      EXPECT_EQ(h[i].dim, h[i].degree == 0 ? factorial(s - 1) : 0u) << "s=" << s << " degree=" << h[i].degree;
    }
  }
}

TEST(LComplex, SymmetricGroupActionCommutesWithDifferential) {
  for (std::size_t s = 3; s <= 5; ++s) {
    for (int n : {0, 1, 2}) {
      const auto l = n == 0 ? LComplex::build(s) : LComplex::build(s).shifted(n);
      std::vector<std::size_t> perm(s);
      std::iota(perm.begin(), perm.end(), std::size_t{0});
      do {
        for (int d = l.complex().lowest(); d < l.complex().highest(); ++d) {
          const SparseMatrix lhs = l.complex().differential(d) * l.action(perm, d);
          const SparseMatrix rhs = l.action(perm, d + 1) * l.complex().differential(d);
          EXPECT_EQ(lhs, rhs);
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
}

TEST(LComplex, ActionIsAHomomorphism) {
  const auto l = LComplex::build(4).shifted(1);
  const std::vector<std::size_t> p{1, 2, 0, 3};
  const std::vector<std::size_t> q{3, 0, 1, 2};
  std::vector<std::size_t> pq(4);
  for (std::size_t i = 0; i < 4; ++i) pq[i] = p[q[i]];
  for (int d = l.complex().lowest(); d <= l.complex().highest(); ++d) {
    EXPECT_EQ(l.action(p, d) * l.action(q, d), l.action(pq, d));
  }
  EXPECT_THROW(l.action({0, 0, 1, 2}, l.complex().lowest()), ValidationError);
}

TEST(ShiftedComponent, DegreeArithmetic) {
  const auto a = LComplex::build(2).shifted(1);
  EXPECT_EQ(a.complex().lowest(), -1);
  EXPECT_EQ(a.complex().dim(-1), 1u);

  const auto b = LComplex::build(3).shifted(2);
  EXPECT_EQ(b.complex().lowest(), -5);
  EXPECT_EQ(b.complex().dim(-5), 1u);
  EXPECT_EQ(b.complex().dim(-4), 3u);
  EXPECT_EQ(b.sign_power(), 2);

  const auto c = LComplex::build(3).shifted(2, ShiftConvention::kIncidenceStatement);
  EXPECT_EQ(c.complex().lowest(), 2);
  EXPECT_EQ(c.sign_power(), 0);
  EXPECT_THROW(LComplex::build(3).shifted(0), ValidationError);
}

TEST(ShiftedComponent, OddShiftTwistsTranspositionBySign) {
  const auto plain = LComplex::build(3);
  const auto twisted = plain.shifted(1);
  const std::vector<std::size_t> swap01{1, 0, 2};
  const SparseMatrix untwisted = plain.action(swap01, -1);
  const SparseMatrix t = twisted.action(swap01, -3);
  ASSERT_EQ(t.rows(), 1u);
  EXPECT_EQ(untwisted.at(0, 0), Rational(1));
  EXPECT_EQ(t, untwisted.scaled(Rational(-1)));

  const auto even = plain.shifted(2);
  EXPECT_EQ(even.action(swap01, -5), untwisted);
}

TEST(Insertion, UnitAndTwoStars) {
  const Tree t = parse_tree("((1 2) 3)");
  const auto c = TreeChain::basis(t, Rational(3));
  EXPECT_EQ(insertion(TreeChain::basis(Tree::degenerate("x")), "x", c), c);
  EXPECT_EQ(insertion(c, "3", TreeChain::basis(Tree::degenerate("3"))), c);

  const auto composite = insertion(TreeChain::basis(Tree::star({"a", "b"})), "b", TreeChain::basis(Tree::star({"c", "d"})));
  ASSERT_EQ(composite.terms.size(), 1u);
  EXPECT_EQ(composite.terms.begin()->first, compose(Tree::star({"a", "b"}), "b", Tree::star({"c", "d"})));
  EXPECT_EQ(composite.terms.begin()->second, Rational(1));
}

TEST(Insertion, LeibnizRuleExhaustiveUpToFiveLeaves) {
  std::size_t checked = 0;
  for (std::size_t a = 1; a <= 5; ++a) {
    for (std::size_t b = 1; a + b - 1 <= 5; ++b) {
      for (const auto& x : all_trees(labels("x", a))) {
        for (const auto& y : all_trees(labels("y", b))) {
          for (const auto& at : x.leaves()) {
            const auto cx = TreeChain::basis(x);
            const auto cy = TreeChain::basis(y);
            const Rational sign(x.edge_count() % 2 == 0 ? 1 : -1);
            const auto lhs = split_differential(insertion(cx, at, cy));
            const auto rhs = insertion(split_differential(cx), at, cy) + sign * insertion(cx, at, split_differential(cy));
            EXPECT_EQ(lhs, rhs) << to_string(x) << " o_" << at << " " << to_string(y);
            ++checked;
          }
        }
      }
    }
  }
  EXPECT_GT(checked, 500u);
}

TEST(Strata, DimensionFormulaAndTelescoping) {
  const Tree star3 = Tree::star({"a", "b", "c"});
  EXPECT_EQ(stratum_dim(star3, 1), 1);
  EXPECT_EQ(stratum_codim(star3), 0);
  const Tree binary = parse_tree("((a b) c)");
  EXPECT_EQ(stratum_dim(binary, 1), 0);
  EXPECT_EQ(stratum_codim(binary), 1);
  EXPECT_EQ(stratum_dim(Tree::star({"a", "b"}), 2), 1);
  EXPECT_THROW(stratum_dim(Tree::degenerate("a"), 1), ValidationError);

  for (int n = 1; n <= 3; ++n) {
    for (std::size_t s = 2; s <= 6; ++s) {
      const int top = n * static_cast<int>(s) - n - 1;
      for (std::size_t k = 0; k + 2 <= s; ++k) {
        for (const auto& t : enumerate_trees(numbered_leaves(s), k)) {
          const auto st = stratum(t, n);
          EXPECT_EQ(st.dim + st.codim, top);
        }
      }
    }
  }
}

TEST(Strata, IncidenceEqualsOneEdgeRefinement) {
  for (std::size_t s = 2; s <= 5; ++s) {
    const auto trees = all_trees(numbered_leaves(s));
    for (const auto& t : trees) {
      for (const auto& u : trees) EXPECT_EQ(incidence(t, u), strict_superset_by_one(t, u));
    }
  }
  EXPECT_THROW(incidence(Tree::star({"a", "b"}), Tree::star({"a", "c"})), ValidationError);
}

TEST(LComplex, FlippedEntryReportsWitness) {
  const auto c = build_L_complex(4).with_flipped_entry(-2, 0, 0);
  const auto w = verify_square_zero(c);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->degree, -2);
  EXPECT_FALSE(w->image.empty());
}
