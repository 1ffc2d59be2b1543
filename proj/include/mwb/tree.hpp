#pragma once

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mwb/rational.hpp"

namespace mwb {

using Label = std::string;
/// Sorted, duplicate-free set of leaf labels.
using LeafSet = std::vector<Label>;

/// Rooted tree with labelled leaves and internal vertices of arity >= 2.
///
/// Stored as its leaf set and the family of leaf-descendant sets of the
/// internal edges (the clusters strictly between a leaf and the root). The
/// family is laminar, each cluster has size >= 2 and is a proper subset of the
/// leaves. The root vertex owns the full leaf set. A single leaf with no
/// clusters is the degenerate tree.
///
/// Internal edges are ordered lexicographically by their clusters; that order
/// is the canonical orientation of the determinant line Det(t).
class Tree {
 public:
  Tree() = default;

  static Tree degenerate(Label leaf);
  static Tree star(LeafSet leaves);
  /// Validates laminarity, cluster sizes and leaf membership.
  static Tree from_clusters(LeafSet leaves, std::vector<LeafSet> clusters);

  bool is_degenerate() const { return leaves_.size() == 1; }
  const LeafSet& leaves() const { return leaves_; }
  /// Internal-edge clusters in canonical order.
  const std::vector<LeafSet>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t vertex_count() const { return is_degenerate() ? 0 : edges_.size() + 1; }

  /// The vertices as leaf-descendant sets: every edge cluster plus the full leaf set (root vertex).
  std::vector<LeafSet> vertex_sets() const;
  /// Inputs of the vertex owning `cluster`: maximal sub-clusters and uncovered leaves, in canonical order.
  std::vector<LeafSet> inputs(const LeafSet& cluster) const;

  friend auto operator<=>(const Tree&, const Tree&) = default;
  friend bool operator==(const Tree&, const Tree&) = default;

 private:
  LeafSet leaves_;
  std::vector<LeafSet> edges_;
};

/// A star together with the leaf of the partial composite it is grafted onto.
/// The first factor has an empty attachment label.
struct StarFactor {
  Tree star;
  Label attachment;
};

/// Sign of a presented edge order relative to the canonical one.
struct DetOrientation {
  Tree tree;
  int sign = 1;
};

/// All trees on `leaves` with exactly `k` internal edges, sorted, without duplicates.
/// Empty when k is out of range or fewer than two leaves are given.
std::vector<Tree> enumerate_trees(const LeafSet& leaves, std::size_t k);

/// Grafts the root of `lower` onto leaf `at` of `upper`.
Tree compose(const Tree& upper, const Label& at, const Tree& lower);

/// Orientation sign of the composite when the edges are listed as
/// (upper's edges, lower's edges, grafting edge), relative to canonical order.
DetOrientation compose_oriented(const Tree& upper, const Label& at, const Tree& lower);

/// Factorization into stars; left-to-right composition reproduces the tree.
std::vector<StarFactor> star_decomposition(const Tree& tree);
Tree recompose(const std::vector<StarFactor>& factors);

struct Splitting {
  Tree tree;
  int sign = 1;
  LeafSet new_edge;
};

/// Every single edge splitting, in the order (vertex in canonical vertex order,
/// subsets by increasing size then lexicographically). The sign places the
/// new edge first, then the old edges in canonical order.
std::vector<Splitting> splittings(const Tree& tree);

/// Relabels leaves by `relabel`; the sign is the reordering sign of the edges.
DetOrientation relabel(const Tree& tree, const std::map<Label, Label>& relabel);

/// Sign of the permutation that sorts `items` (which must be distinct).
template <class T>
int sorting_sign(std::vector<T> items);

/// Nested-parenthesis notation, e.g. "((a b) c d)"; a bare label is the degenerate tree.
Tree parse_tree(std::string_view text);
std::string to_string(const Tree& tree);

template <class T>
int sorting_sign(std::vector<T> items) {
  int sign = 1;
  for (std::size_t i = 1; i < items.size(); ++i) {
    for (std::size_t j = i; j > 0 && items[j] < items[j - 1]; --j) {
      std::swap(items[j], items[j - 1]);
      sign = -sign;
    }
  }
  for (std::size_t i = 1; i < items.size(); ++i) {
    if (!(items[i - 1] < items[i])) throw ValidationError("sorting_sign: repeated item");
  }
  return sign;
}

}  // namespace mwb
