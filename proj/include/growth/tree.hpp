#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "growth/system.hpp"

namespace growth {

// Labeled binary tree whose children follow the replacement rule: an
// internal node labeled v has children labeled M(v) = (u, w), in order.
// The tree evaluates to the sum of the starting values of its leaves.
// Nodes live in an arena; child index -1 marks a leaf.
struct CompositionTree {
  struct Node {
    FunctionId label;
    std::int32_t left = -1;
    std::int32_t right = -1;
  };

  std::vector<Node> nodes;
  std::int32_t root = -1;

  static CompositionTree leaf(FunctionId label);

  bool is_leaf(std::int32_t i) const {
    return nodes[i].left < 0;
  }
  std::int32_t add_leaf(FunctionId label);
  std::int32_t add_node(FunctionId label, std::int32_t left, std::int32_t right);
  // Copies other's nodes into this arena; returns the copied root.
  std::int32_t splice(const CompositionTree& other);

  std::size_t leaf_count() const;
  std::vector<FunctionId> leaf_labels() const;  // left-to-right order
  Rational value(const ReplacementSystem& system) const;
  // Preorder subtree nodes under i (i included).
  std::vector<std::int32_t> subtree_nodes(std::int32_t i) const;
  bool is_proper_descendant(std::int32_t ancestor, std::int32_t node) const;
};

// Structural equality: same shape and labels, arena layout ignored.
bool tree_equal(const CompositionTree& a, const CompositionTree& b);

// Canonical one-line form, e.g. "(b1 (b2 b3 b4) b3)"; used for
// deterministic ordering.
std::string tree_key(const ReplacementSystem& system, const CompositionTree& tree);

// Codes: "empty-tree", "bad-node", "bad-child-label" (children must match
// the rule of their parent's label).
std::vector<Violation> validate_tree(const ReplacementSystem& system, const CompositionTree& tree);

// Indented text form; leaves carry "= c" suffixes.
std::string tree_text(const ReplacementSystem& system, const CompositionTree& tree);

// Graphviz digraph; node label = function name, leaves suffixed "= c".
std::string tree_dot(const ReplacementSystem& system, const CompositionTree& tree);

}  // namespace growth
