#include "mwb/tree.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <functional>
#include <set>

namespace mwb {

namespace {

void validate_label(const Label& label) {
  if (label.empty()) throw ValidationError("empty leaf label");
  for (char c : label) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')') {
      throw ValidationError("leaf label \"" + label + "\" contains whitespace or parentheses");
    }
  }
}

LeafSet sorted_unique(LeafSet leaves) {
  std::sort(leaves.begin(), leaves.end());
  auto dup = std::adjacent_find(leaves.begin(), leaves.end());
  if (dup != leaves.end()) throw ValidationError("duplicate leaf label \"" + *dup + "\"");
  return leaves;
}

bool is_subset(const LeafSet& inner, const LeafSet& outer) {
  return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

bool disjoint(const LeafSet& a, const LeafSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return false;
    if (*i < *j) ++i; else ++j;
  }
  return true;
}

LeafSet set_union(const LeafSet& a, const LeafSet& b) {
  LeafSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::string join(const LeafSet& labels, const char* separator) {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += separator;
    out += labels[i];
  }
  return out;
}

Label cluster_name(const LeafSet& cluster) { return "<" + join(cluster, ",") + ">"; }

}  // namespace

Tree Tree::degenerate(Label leaf) {
  validate_label(leaf);
  Tree t;
  t.leaves_ = {std::move(leaf)};
  return t;
}

Tree Tree::star(LeafSet leaves) { return from_clusters(std::move(leaves), {}); }

Tree Tree::from_clusters(LeafSet leaves, std::vector<LeafSet> clusters) {
  for (const auto& l : leaves) validate_label(l);
  Tree t;
  t.leaves_ = sorted_unique(std::move(leaves));
  if (t.leaves_.empty()) throw ValidationError("a tree needs at least one leaf");
  if (t.leaves_.size() == 1 && !clusters.empty()) throw ValidationError("degenerate tree cannot have internal edges");
  for (auto& c : clusters) {
    c = sorted_unique(std::move(c));
    if (c.size() < 2 || c.size() >= t.leaves_.size() || !is_subset(c, t.leaves_)) {
      throw ValidationError("cluster {" + join(c, ",") + "} is not a proper subset of size >= 2 of the leaves");
    }
  }
  std::sort(clusters.begin(), clusters.end());
  if (std::adjacent_find(clusters.begin(), clusters.end()) != clusters.end()) {
    throw ValidationError("repeated cluster");
  }
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    for (std::size_t j = i + 1; j < clusters.size(); ++j) {
      const auto& a = clusters[i];
      const auto& b = clusters[j];
      if (!disjoint(a, b) && !is_subset(a, b) && !is_subset(b, a)) {
        throw ValidationError("clusters {" + join(a, ",") + "} and {" + join(b, ",") + "} overlap");
      }
    }
  }
  t.edges_ = std::move(clusters);
  return t;
}

std::vector<LeafSet> Tree::vertex_sets() const {
  if (is_degenerate()) return {};
  std::vector<LeafSet> out = edges_;
  out.push_back(leaves_);
  return out;
}

std::vector<LeafSet> Tree::inputs(const LeafSet& cluster) const {
  std::vector<const LeafSet*> inside;
  for (const auto& e : edges_) {
    if (e.size() < cluster.size() && is_subset(e, cluster)) inside.push_back(&e);
  }
  std::vector<LeafSet> out;
  LeafSet covered;
  for (const LeafSet* e : inside) {
    const bool maximal = std::none_of(inside.begin(), inside.end(), [&](const LeafSet* other) {
      return other != e && other->size() > e->size() && is_subset(*e, *other);
    });
    if (maximal) {
      out.push_back(*e);
      covered = set_union(covered, *e);
    }
  }
  for (const auto& leaf : cluster) {
    if (!std::binary_search(covered.begin(), covered.end(), leaf)) out.push_back({leaf});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Tree> enumerate_trees(const LeafSet& leaves_in, std::size_t k) {
  const LeafSet leaves = sorted_unique(leaves_in);
  const std::size_t n = leaves.size();
  if (n < 2 || k > n - 2) return {};
  if (n > 16) throw ValidationError("tree enumeration limited to 16 leaves");

  // Candidate clusters as bitmasks over the sorted leaves.
  std::vector<std::uint32_t> candidates;
  for (std::uint32_t mask = 1; mask < (1u << n) - 1; ++mask) {
    if (std::popcount(mask) >= 2) candidates.push_back(mask);
  }
  auto compatible = [](std::uint32_t a, std::uint32_t b) {
    return (a & b) == 0 || (a & b) == a || (a & b) == b;
  };
  auto to_set = [&](std::uint32_t mask) {
    LeafSet s;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) s.push_back(leaves[i]);
    }
    return s;
  };

  std::vector<Tree> out;
  std::vector<std::uint32_t> chosen;
  std::function<void(std::size_t)> extend = [&](std::size_t start) {
    if (chosen.size() == k) {
      std::vector<LeafSet> clusters;
      for (auto m : chosen) clusters.push_back(to_set(m));
      out.push_back(Tree::from_clusters(leaves, std::move(clusters)));
      return;
    }
    for (std::size_t i = start; i < candidates.size(); ++i) {
      const auto c = candidates[i];
      if (std::all_of(chosen.begin(), chosen.end(), [&](auto m) { return compatible(m, c); })) {
        chosen.push_back(c);
        extend(i + 1);
        chosen.pop_back();
      }
    }
  };
  extend(0);
  std::sort(out.begin(), out.end());
  return out;
}

DetOrientation compose_oriented(const Tree& upper, const Label& at, const Tree& lower) {
  if (!std::binary_search(upper.leaves().begin(), upper.leaves().end(), at)) {
    throw ValidationError("composition leaf \"" + at + "\" is not a leaf of the upper tree");
  }
  LeafSet rest;
  for (const auto& l : upper.leaves()) {
    if (l != at) rest.push_back(l);
  }
  for (const auto& l : lower.leaves()) {
    if (std::binary_search(rest.begin(), rest.end(), l)) {
      throw ValidationError("label collision in composition: \"" + l + "\" appears in both trees");
    }
  }
  if (upper.is_degenerate()) return {lower, 1};

  std::vector<LeafSet> listed;
  for (const auto& e : upper.edges()) {
    if (std::binary_search(e.begin(), e.end(), at)) {
      LeafSet replaced;
      for (const auto& l : e) {
        if (l != at) replaced.push_back(l);
      }
      listed.push_back(set_union(replaced, lower.leaves()));
    } else {
      listed.push_back(e);
    }
  }
  for (const auto& e : lower.edges()) listed.push_back(e);
  if (!lower.is_degenerate()) listed.push_back(lower.leaves());

  const int sign = sorting_sign(listed);
  return {Tree::from_clusters(set_union(rest, lower.leaves()), std::move(listed)), sign};
}

Tree compose(const Tree& upper, const Label& at, const Tree& lower) { return compose_oriented(upper, at, lower).tree; }

std::vector<StarFactor> star_decomposition(const Tree& tree) {
  if (tree.is_degenerate()) throw ValidationError("the degenerate tree has no star decomposition");
  for (const auto& l : tree.leaves()) {
    if (!l.empty() && l.front() == '<') {
      throw ValidationError("leaf label \"" + l + "\" collides with reserved cluster names");
    }
  }
  std::vector<StarFactor> out;
  std::vector<LeafSet> queue = {tree.leaves()};
  std::vector<Label> attachments = {""};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    LeafSet star_leaves;
    for (const auto& input : tree.inputs(queue[i])) {
      if (input.size() == 1) {
        star_leaves.push_back(input.front());
      } else {
        star_leaves.push_back(cluster_name(input));
        queue.push_back(input);
        attachments.push_back(cluster_name(input));
      }
    }
    out.push_back({Tree::star(std::move(star_leaves)), attachments[i]});
  }
  return out;
}

Tree recompose(const std::vector<StarFactor>& factors) {
  if (factors.empty()) throw ValidationError("empty star decomposition");
  Tree result = factors.front().star;
  for (std::size_t i = 1; i < factors.size(); ++i) result = compose(result, factors[i].attachment, factors[i].star);
  return result;
}

std::vector<Splitting> splittings(const Tree& tree) {
  std::vector<Splitting> out;
  for (const auto& vertex : tree.vertex_sets()) {
    const auto in = tree.inputs(vertex);
    const std::size_t arity = in.size();
    for (std::size_t size = 2; size + 1 <= arity; ++size) {
      // Lexicographic size-subsets of the input indices.
      std::vector<std::size_t> pick(size);
      for (std::size_t i = 0; i < size; ++i) pick[i] = i;
      while (true) {
        LeafSet merged;
        for (std::size_t i : pick) merged = set_union(merged, in[i]);
        std::vector<LeafSet> clusters = tree.edges();
        const auto before = static_cast<std::size_t>(
            std::lower_bound(clusters.begin(), clusters.end(), merged) - clusters.begin());
        clusters.push_back(merged);
        out.push_back({Tree::from_clusters(tree.leaves(), std::move(clusters)), before % 2 == 0 ? 1 : -1, merged});

        std::size_t pos = size;
        while (pos > 0 && pick[pos - 1] == arity - size + pos - 1) --pos;
        if (pos == 0) break;
        ++pick[pos - 1];
        for (std::size_t i = pos; i < size; ++i) pick[i] = pick[i - 1] + 1;
      }
    }
  }
  return out;
}

DetOrientation relabel(const Tree& tree, const std::map<Label, Label>& mapping) {
  auto image = [&](const Label& l) {
    auto it = mapping.find(l);
    return it == mapping.end() ? l : it->second;
  };
  LeafSet leaves;
  for (const auto& l : tree.leaves()) leaves.push_back(image(l));
  std::vector<LeafSet> listed;
  for (const auto& e : tree.edges()) {
    LeafSet c;
    for (const auto& l : e) c.push_back(image(l));
    std::sort(c.begin(), c.end());
    listed.push_back(std::move(c));
  }
  const int sign = sorting_sign(listed);
  if (tree.is_degenerate()) return {Tree::degenerate(leaves.front()), 1};
  return {Tree::from_clusters(std::move(leaves), std::move(listed)), sign};
}

namespace {

struct Parser {
  std::string_view text;
  std::size_t pos = 0;
  LeafSet leaves;
  std::vector<LeafSet> clusters;

  void skip() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ValidationError("tree notation: " + what + " at offset " + std::to_string(pos) + " in \"" +
                          std::string(text) + "\"");
  }

  LeafSet node(bool root) {
    skip();
    if (pos >= text.size()) fail("unexpected end");
    if (text[pos] == ')') fail("unexpected ')'");
    if (text[pos] != '(') {
      std::size_t start = pos;
      while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) && text[pos] != '(' &&
             text[pos] != ')') {
        ++pos;
      }
      Label l(text.substr(start, pos - start));
      leaves.push_back(l);
      return {l};
    }
    ++pos;
    LeafSet below;
    std::size_t children = 0;
    while (true) {
      skip();
      if (pos >= text.size()) fail("missing ')'");
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      below = set_union(below, node(false));
      ++children;
    }
    if (children < 2) fail("a vertex needs at least two inputs");
    if (!root) clusters.push_back(below);
    return below;
  }
};

}  // namespace

Tree parse_tree(std::string_view text) {
  Parser p{text, 0, {}, {}};
  p.node(true);
  p.skip();
  if (p.pos != text.size()) p.fail("trailing characters");
  if (p.leaves.size() == 1) return Tree::degenerate(p.leaves.front());
  return Tree::from_clusters(std::move(p.leaves), std::move(p.clusters));
}

namespace {

std::string print_vertex(const Tree& tree, const LeafSet& cluster) {
  std::string out = "(";
  bool first = true;
  for (const auto& input : tree.inputs(cluster)) {
    if (!first) out += ' ';
    first = false;
    out += input.size() == 1 ? input.front() : print_vertex(tree, input);
  }
  return out + ")";
}

}  // namespace

std::string to_string(const Tree& tree) {
  if (tree.leaves().empty()) return "";
  if (tree.is_degenerate()) return tree.leaves().front();
  return print_vertex(tree, tree.leaves());
}

}  // namespace mwb
