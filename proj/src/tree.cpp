#include "growth/tree.hpp"

#include <functional>
#include <sstream>

namespace growth {

CompositionTree CompositionTree::leaf(FunctionId label) {
  CompositionTree t;
  t.root = t.add_leaf(label);
  return t;
}

std::int32_t CompositionTree::add_leaf(FunctionId label) {
  nodes.push_back({label, -1, -1});
  return static_cast<std::int32_t>(nodes.size()) - 1;
}

std::int32_t CompositionTree::add_node(FunctionId label, std::int32_t left, std::int32_t right) {
  nodes.push_back({label, left, right});
  return static_cast<std::int32_t>(nodes.size()) - 1;
}

std::int32_t CompositionTree::splice(const CompositionTree& other) {
  std::int32_t offset = static_cast<std::int32_t>(nodes.size());
  for (const Node& n : other.nodes) {
    nodes.push_back({n.label, n.left < 0 ? -1 : n.left + offset, n.right < 0 ? -1 : n.right + offset});
  }
  return other.root + offset;
}

std::size_t CompositionTree::leaf_count() const {
  std::size_t count = 0;
  for (std::int32_t i : subtree_nodes(root)) {
    if (is_leaf(i)) ++count;
  }
  return count;
}

std::vector<FunctionId> CompositionTree::leaf_labels() const {
  std::vector<FunctionId> out;
  std::function<void(std::int32_t)> walk = [&](std::int32_t i) {
    if (is_leaf(i)) {
      out.push_back(nodes[i].label);
    } else {
      walk(nodes[i].left);
      walk(nodes[i].right);
    }
  };
  if (root >= 0) walk(root);
  return out;
}

Rational CompositionTree::value(const ReplacementSystem& system) const {
  Rational sum = 0;
  for (FunctionId label : leaf_labels()) sum += system.c(label);
  return sum;
}

std::vector<std::int32_t> CompositionTree::subtree_nodes(std::int32_t i) const {
  std::vector<std::int32_t> out;
  if (i < 0) return out;
  std::vector<std::int32_t> stack{i};
  while (!stack.empty()) {
    std::int32_t n = stack.back();
    stack.pop_back();
    out.push_back(n);
    if (!is_leaf(n)) {
      stack.push_back(nodes[n].right);
      stack.push_back(nodes[n].left);
    }
  }
  return out;
}

bool CompositionTree::is_proper_descendant(std::int32_t ancestor, std::int32_t node) const {
  if (ancestor == node || is_leaf(ancestor)) return false;
  std::vector<std::int32_t> stack{nodes[ancestor].left, nodes[ancestor].right};
  while (!stack.empty()) {
    std::int32_t n = stack.back();
    stack.pop_back();
    if (n == node) return true;
    if (!is_leaf(n)) {
      stack.push_back(nodes[n].left);
      stack.push_back(nodes[n].right);
    }
  }
  return false;
}

namespace {

bool subtree_equal(const CompositionTree& a, std::int32_t ia, const CompositionTree& b,
                   std::int32_t ib) {
  if (a.nodes[ia].label != b.nodes[ib].label) return false;
  bool la = a.is_leaf(ia), lb = b.is_leaf(ib);
  if (la != lb) return false;
  if (la) return true;
  return subtree_equal(a, a.nodes[ia].left, b, b.nodes[ib].left) &&
         subtree_equal(a, a.nodes[ia].right, b, b.nodes[ib].right);
}

}  // namespace

bool tree_equal(const CompositionTree& a, const CompositionTree& b) {
  if ((a.root < 0) != (b.root < 0)) return false;
  if (a.root < 0) return true;
  return subtree_equal(a, a.root, b, b.root);
}

std::string tree_key(const ReplacementSystem& system, const CompositionTree& tree) {
  std::string out;
  std::function<void(std::int32_t)> walk = [&](std::int32_t i) {
    if (tree.is_leaf(i)) {
      out += system.name(tree.nodes[i].label);
    } else {
      out += "(";
      out += system.name(tree.nodes[i].label);
      out += " ";
      walk(tree.nodes[i].left);
      out += " ";
      walk(tree.nodes[i].right);
      out += ")";
    }
  };
  if (tree.root >= 0) walk(tree.root);
  return out;
}

std::vector<Violation> validate_tree(const ReplacementSystem& system,
                                     const CompositionTree& tree) {
  std::vector<Violation> out;
  if (tree.root < 0 || tree.nodes.empty()) {
    out.push_back({"empty-tree", "tree has no root", -1});
    return out;
  }
  for (std::int32_t i : tree.subtree_nodes(tree.root)) {
    const auto& n = tree.nodes[i];
    if (n.label >= system.size()) {
      out.push_back({"bad-node", "node label out of range", i});
      continue;
    }
    if (tree.is_leaf(i)) continue;
    if (n.right < 0 || n.left >= static_cast<std::int32_t>(tree.nodes.size()) ||
        n.right >= static_cast<std::int32_t>(tree.nodes.size())) {
      out.push_back({"bad-node", "internal node must have two children", i});
      continue;
    }
    auto [u, w] = system.rule[n.label];
    if (tree.nodes[n.left].label != u || tree.nodes[n.right].label != w) {
      out.push_back({"bad-child-label",
                     "children of '" + system.name(n.label) + "' must be labeled ('" +
                         system.name(u) + "', '" + system.name(w) + "')",
                     i});
    }
  }
  return out;
}

std::string tree_text(const ReplacementSystem& system, const CompositionTree& tree) {
  std::ostringstream os;
  std::function<void(std::int32_t, int)> walk = [&](std::int32_t i, int depth) {
    for (int d = 0; d < depth; ++d) os << "  ";
    os << system.name(tree.nodes[i].label);
    if (tree.is_leaf(i)) {
      os << " = " << system.c(tree.nodes[i].label);
    }
    os << "\n";
    if (!tree.is_leaf(i)) {
      walk(tree.nodes[i].left, depth + 1);
      walk(tree.nodes[i].right, depth + 1);
    }
  };
  if (tree.root >= 0) walk(tree.root, 0);
  return os.str();
}

std::string tree_dot(const ReplacementSystem& system, const CompositionTree& tree) {
  std::ostringstream os;
  os << "digraph composition_tree {\n  node [shape=box];\n";
  for (std::int32_t i : tree.subtree_nodes(tree.root)) {
    os << "  n" << i << " [label=\"" << system.name(tree.nodes[i].label);
    if (tree.is_leaf(i)) os << " = " << system.c(tree.nodes[i].label);
    os << "\"];\n";
  }
  for (std::int32_t i : tree.subtree_nodes(tree.root)) {
    if (!tree.is_leaf(i)) {
      os << "  n" << i << " -> n" << tree.nodes[i].left << ";\n";
      os << "  n" << i << " -> n" << tree.nodes[i].right << ";\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace growth
