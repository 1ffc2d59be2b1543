#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <set>

#include "mwb/operad_complex.hpp"
#include "mwb/tree.hpp"

using namespace mwb;

namespace {

// Oracle: every k-subset of candidate clusters, kept when pairwise nested-or-disjoint.
std::set<std::vector<LeafSet>> brute_force_families(const LeafSet& leaves, std::size_t k) {
  const std::size_t n = leaves.size();
  std::vector<LeafSet> candidates;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    const int bits = __builtin_popcount(mask);
    if (bits < 2 || bits >= static_cast<int>(n)) continue;
    LeafSet s;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) s.push_back(leaves[i]);
    }
    candidates.push_back(s);
  }
  std::set<std::vector<LeafSet>> out;
  std::vector<std::size_t> pick;
  auto nested_or_disjoint = [](const LeafSet& a, const LeafSet& b) {
    LeafSet inter;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(inter));
    return inter.empty() || inter == a || inter == b;
  };
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (pick.size() == k) {
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
          if (!nested_or_disjoint(candidates[pick[i]], candidates[pick[j]])) return;
        }
      }
      std::vector<LeafSet> family;
      for (auto i : pick) family.push_back(candidates[i]);
      std::sort(family.begin(), family.end());
      out.insert(family);
      return;
    }
    for (std::size_t i = start; i < candidates.size(); ++i) {
      pick.push_back(i);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return out;
}

std::size_t double_factorial(std::size_t m) { return m <= 1 ? 1 : m * double_factorial(m - 2); }

LeafSet labels(const std::string& prefix, std::size_t n) {
  LeafSet out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

// Every tree on the given leaves, degenerate included.
std::vector<Tree> all_trees(const LeafSet& leaves) {
  if (leaves.size() == 1) return {Tree::degenerate(leaves.front())};
  std::vector<Tree> out;
  for (std::size_t k = 0; k + 2 <= leaves.size(); ++k) {
    auto ts = enumerate_trees(leaves, k);
    out.insert(out.end(), ts.begin(), ts.end());
  }
  return out;
}

}  // namespace

TEST(Enumerate, SpecExamples) {
  EXPECT_EQ(enumerate_trees({"a", "b"}, 0).size(), 1u);
  EXPECT_EQ(enumerate_trees({"a", "b", "c"}, 1).size(), 3u);
  EXPECT_EQ(enumerate_trees({"1", "2", "3", "4"}, 2).size(), 15u);
  EXPECT_TRUE(enumerate_trees({"a", "b", "c"}, 2).empty());
  EXPECT_TRUE(enumerate_trees({"a"}, 0).empty());
}

TEST(Enumerate, MatchesBruteForceOracle) {
  for (std::size_t n = 2; n <= 6; ++n) {
    const LeafSet leaves = numbered_leaves(n);
    for (std::size_t k = 0; k + 2 <= n; ++k) {
      const auto trees = enumerate_trees(leaves, k);
      const auto oracle = brute_force_families(leaves, k);
      ASSERT_EQ(trees.size(), oracle.size()) << "n=" << n << " k=" << k;
      std::set<std::vector<LeafSet>> got;
      for (const auto& t : trees) got.insert(t.edges());
      EXPECT_EQ(got, oracle);
      EXPECT_TRUE(std::is_sorted(trees.begin(), trees.end()));
      EXPECT_EQ(std::adjacent_find(trees.begin(), trees.end()), trees.end());
    }
  }
}

TEST(Enumerate, BinaryTreeCountIsDoubleFactorial) {
  for (std::size_t n = 2; n <= 6; ++n) {
    EXPECT_EQ(enumerate_trees(numbered_leaves(n), n - 2).size(), double_factorial(2 * n - 3));
  }
}

TEST(Tree, StructuralValidation) {
  EXPECT_THROW(Tree::from_clusters({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}), ValidationError);
  EXPECT_THROW(Tree::from_clusters({"a", "b", "c"}, {{"a", "b", "c"}}), ValidationError);
  EXPECT_THROW(Tree::from_clusters({"a", "b", "c"}, {{"a"}}), ValidationError);
  EXPECT_THROW(Tree::star({"a", "a"}), ValidationError);
  EXPECT_THROW(Tree::degenerate("a b"), ValidationError);
}

TEST(Compose, UnitLaws) {
  const Tree t = parse_tree("((a b) c d)");
  EXPECT_EQ(compose(Tree::degenerate("x"), "x", t), t);
  EXPECT_EQ(compose(t, "c", Tree::degenerate("c")), t);
  EXPECT_EQ(compose(t, "c", Tree::degenerate("z")), parse_tree("((a b) z d)"));
}

TEST(Compose, TwoStarsGiveForcedTree) {
  const Tree t = compose(Tree::star({"a", "b"}), "b", Tree::star({"c", "d"}));
  EXPECT_EQ(t.leaves(), (LeafSet{"a", "c", "d"}));
  const std::vector<LeafSet> vertex_sets{{"c", "d"}, {"a", "c", "d"}};
  EXPECT_EQ(t.vertex_sets(), vertex_sets);
  EXPECT_EQ(t.edge_count(), 1u);
  EXPECT_EQ(to_string(t), "(a (c d))");
}

TEST(Compose, EdgeCountAndLabelCollision) {
  const Tree t1 = parse_tree("((a b) c)");
  const Tree t2 = parse_tree("((d e) (f g))");
  EXPECT_EQ(compose(t1, "a", t2).edge_count(), t1.edge_count() + t2.edge_count() + 1);
  try {
    compose(t1, "a", Tree::star({"c", "q"}));
    FAIL() << "expected collision";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("\"c\""), std::string::npos);
  }
  EXPECT_THROW(compose(t1, "z", t2), ValidationError);
}

TEST(Compose, AssociativeForTotalLeavesUpToSix) {
  std::size_t checked = 0;
  for (std::size_t a = 1; a <= 5; ++a) {
    for (std::size_t b = 1; b <= 5; ++b) {
      for (std::size_t c = 1; c <= 5; ++c) {
        if (a + b + c - 2 > 6) continue;
        const auto T1 = all_trees(labels("x", a));
        const auto T2 = all_trees(labels("y", b));
        const auto T3 = all_trees(labels("z", c));
        for (const auto& t1 : T1) {
          for (const auto& t2 : T2) {
            for (const auto& t3 : T3) {
              const Label s = t1.leaves().front();
              // Sequential: r is a leaf of t2.
              for (const auto& r : t2.leaves()) {
                EXPECT_EQ(compose(compose(t1, s, t2), r, t3), compose(t1, s, compose(t2, r, t3)));
                ++checked;
              }
              // Parallel: r is another leaf of t1.
              for (const auto& r : t1.leaves()) {
                if (r == s) continue;
                EXPECT_EQ(compose(compose(t1, s, t2), r, t3), compose(compose(t1, r, t3), s, t2));
                ++checked;
              }
            }
          }
        }
      }
    }
  }
  EXPECT_GT(checked, 1000u);
}

TEST(StarDecomposition, Examples) {
  const Tree star = Tree::star({"a", "b", "c"});
  const auto single = star_decomposition(star);
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0].star, star);

  const Tree t = parse_tree("((a b) c)");
  const auto two = star_decomposition(t);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(recompose(two), t);
  EXPECT_THROW(star_decomposition(Tree::degenerate("a")), ValidationError);
}

TEST(StarDecomposition, RoundTripOverEnumerations) {
  const LeafSet leaves = numbered_leaves(5);
  for (std::size_t k = 0; k <= 3; ++k) {
    for (const auto& t : enumerate_trees(leaves, k)) {
      const auto factors = star_decomposition(t);
      EXPECT_EQ(factors.size(), k + 1);
      for (const auto& f : factors) EXPECT_EQ(f.star.edge_count(), 0u);
      EXPECT_EQ(recompose(factors), t);
    }
  }
}

TEST(Splittings, BinomialCounts) {
  EXPECT_TRUE(splittings(Tree::star({"a", "b"})).empty());
  EXPECT_EQ(splittings(Tree::star({"a", "b", "c"})).size(), 3u);
  EXPECT_EQ(splittings(Tree::star({"a", "b", "c", "d"})).size(), 10u);
}

TEST(Splittings, AddOneEdgeAndRefineFamily) {
  for (std::size_t n = 3; n <= 6; ++n) {
    for (std::size_t k = 0; k + 3 <= n; ++k) {
      for (const auto& t : enumerate_trees(numbered_leaves(n), k)) {
        std::set<Tree> seen;
        for (const auto& s : splittings(t)) {
          EXPECT_EQ(s.tree.edge_count(), t.edge_count() + 1);
          EXPECT_TRUE(std::includes(s.tree.edges().begin(), s.tree.edges().end(), t.edges().begin(),
                                    t.edges().end()));
          EXPECT_TRUE(seen.insert(s.tree).second) << "duplicate splitting";
          // New-edge-first sign: (-1)^(number of old edges sorting before the new one).
          const auto pos = std::find(s.tree.edges().begin(), s.tree.edges().end(), s.new_edge) - s.tree.edges().begin();
          EXPECT_EQ(s.sign, pos % 2 == 0 ? 1 : -1);
        }
      }
    }
  }
}

TEST(Splittings, TwoStepSignsCancel) {
  for (std::size_t n = 3; n <= 6; ++n) {
    for (std::size_t k = 0; k + 4 <= n; ++k) {
      for (const auto& t : enumerate_trees(numbered_leaves(n), k)) {
        std::map<Tree, int> total;
        std::map<Tree, int> paths;
        for (const auto& s1 : splittings(t)) {
          for (const auto& s2 : splittings(s1.tree)) {
            total[s2.tree] += s1.sign * s2.sign;
            paths[s2.tree] += 1;
          }
        }
        for (const auto& [tree, sum] : total) {
          EXPECT_EQ(sum, 0);
          EXPECT_EQ(paths[tree], 2) << "each two-step refinement arises from exactly two orders";
        }
      }
    }
  }
}

TEST(Relabel, TranspositionOfEdgesFlipsSign) {
  const Tree t = parse_tree("((1 2) (3 4))");
  // Swapping 1<->3 and 2<->4 exchanges the two edge clusters.
  const auto image = relabel(t, {{"1", "3"}, {"3", "1"}, {"2", "4"}, {"4", "2"}});
  EXPECT_EQ(image.tree, t);
  EXPECT_EQ(image.sign, -1);
  EXPECT_EQ(sorting_sign(std::vector<int>{2, 1, 3}), -1);
  EXPECT_EQ(sorting_sign(std::vector<int>{3, 1, 2}), 1);
}

TEST(Notation, RoundTripsAndRejectsMalformed) {
  for (std::size_t n = 1; n <= 5; ++n) {
    for (const auto& t : all_trees(numbered_leaves(n))) {
      EXPECT_EQ(parse_tree(to_string(t)), t);
      EXPECT_EQ(to_string(parse_tree(to_string(t))), to_string(t));
    }
  }
  const Tree t = parse_tree("  ( (a b)   c d ) ");
  EXPECT_EQ(t.edges(), (std::vector<LeafSet>{{"a", "b"}}));
  EXPECT_EQ(to_string(t), "((a b) c d)");
  EXPECT_THROW(parse_tree("((a b)"), ValidationError);
  EXPECT_THROW(parse_tree("((a b))"), ValidationError);
  EXPECT_THROW(parse_tree("(a)"), ValidationError);
  EXPECT_THROW(parse_tree("(a a)"), ValidationError);
  EXPECT_THROW(parse_tree("(a b) c"), ValidationError);
  EXPECT_THROW(parse_tree(""), ValidationError);
}
