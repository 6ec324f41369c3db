#include "growth/pseudoloop.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace growth {

std::string path_string(const LeafPath& path) {
  std::string out;
  out.reserve(path.size());
  for (Side s : path) out += s == Side::left ? 'L' : 'R';
  return out;
}

LeafPath parse_path(std::string_view text) {
  LeafPath out;
  out.reserve(text.size());
  for (char c : text) {
    if (c == 'L') {
      out.push_back(Side::left);
    } else if (c == 'R') {
      out.push_back(Side::right);
    } else {
      throw std::invalid_argument(std::string("invalid path step '") + c + "'");
    }
  }
  return out;
}

std::int32_t node_at(const CompositionTree& tree, const LeafPath& path) {
  std::int32_t i = tree.root;
  for (Side s : path) {
    if (i < 0 || tree.is_leaf(i)) {
      throw std::invalid_argument("path walks off a leaf");
    }
    i = s == Side::left ? tree.nodes[i].left : tree.nodes[i].right;
  }
  if (i < 0) throw std::invalid_argument("path leads nowhere");
  return i;
}

std::int32_t marked_leaf_index(const PseudoLoop& loop) {
  return node_at(loop.tree, loop.marked_path);
}

std::vector<Violation> validate_loop(const ReplacementSystem& system, const PseudoLoop& loop) {
  std::vector<Violation> out = validate_tree(system, loop.tree);
  if (!out.empty()) return out;
  std::int32_t marked;
  try {
    marked = marked_leaf_index(loop);
  } catch (const std::invalid_argument& e) {
    out.push_back({"bad-marked-path", e.what(), -1});
    return out;
  }
  if (!loop.tree.is_leaf(marked)) {
    out.push_back({"bad-marked-path", "marked path must end at a leaf", marked});
    return out;
  }
  if (loop.tree.nodes[marked].label != loop.tree.nodes[loop.tree.root].label) {
    out.push_back({"marked-label-mismatch",
                   "marked leaf '" + system.name(loop.tree.nodes[marked].label) +
                       "' differs from root '" + system.name(loop.tree.nodes[loop.tree.root].label) +
                       "'",
                   marked});
  }
  if (loop.tree.leaf_count() < 2) {
    out.push_back({"degenerate-loop", "a pseudo-loop needs at least 2 leaves", -1});
  }
  return out;
}

Rational loop_value(const ReplacementSystem& system, const PseudoLoop& loop) {
  std::int32_t marked = marked_leaf_index(loop);
  return loop.tree.value(system) - system.c(loop.tree.nodes[marked].label);
}

std::size_t loop_size(const PseudoLoop& loop) { return loop.tree.leaf_count() - 1; }

Rational rate(const ReplacementSystem& system, const PseudoLoop& loop) {
  return loop_value(system, loop) / Rational(static_cast<long>(loop_size(loop)));
}

CompositionTree pump(const PseudoLoop& loop, std::size_t k) {
  if (k == 0) throw std::invalid_argument("pump requires k >= 1");
  CompositionTree result = loop.tree;
  std::int32_t marked = marked_leaf_index(loop);
  std::int32_t loop_marked = marked;  // marked index within loop.tree's layout
  for (std::size_t step = 2; step <= k; ++step) {
    std::int32_t offset = static_cast<std::int32_t>(result.nodes.size());
    std::int32_t copy_root = result.splice(loop.tree);
    // Graft the copy in place of the current marked leaf; the copied root
    // node itself becomes unreachable.
    result.nodes[marked].left = result.nodes[copy_root].left;
    result.nodes[marked].right = result.nodes[copy_root].right;
    marked = loop_marked + offset;
  }
  return result;
}

std::vector<InnerLoopSite> find_inner_loops(const CompositionTree& tree) {
  std::vector<InnerLoopSite> out;
  if (tree.root < 0) return out;
  for (std::int32_t a : tree.subtree_nodes(tree.root)) {
    if (tree.is_leaf(a)) continue;
    for (std::int32_t d : tree.subtree_nodes(a)) {
      if (d != a && tree.nodes[d].label == tree.nodes[a].label) {
        out.push_back({a, d});
      }
    }
  }
  return out;
}

namespace {

void check_site(const CompositionTree& tree, InnerLoopSite site) {
  auto in_range = [&](std::int32_t i) {
    return i >= 0 && i < static_cast<std::int32_t>(tree.nodes.size());
  };
  if (!in_range(site.ancestor) || !in_range(site.descendant)) {
    throw std::invalid_argument("inner-loop site out of range");
  }
  if (!tree.is_proper_descendant(site.ancestor, site.descendant)) {
    throw std::invalid_argument("site descendant is not a proper descendant of the ancestor");
  }
  if (tree.nodes[site.ancestor].label != tree.nodes[site.descendant].label) {
    throw std::invalid_argument("site labels differ");
  }
}

std::size_t leaves_under(const CompositionTree& tree, std::int32_t i) {
  std::size_t count = 0;
  for (std::int32_t n : tree.subtree_nodes(i)) {
    if (tree.is_leaf(n)) ++count;
  }
  return count;
}

}  // namespace

CompositionTree remove_inner_loop(const CompositionTree& tree, InnerLoopSite site) {
  check_site(tree, site);
  CompositionTree out;
  std::function<std::int32_t(std::int32_t, bool)> copy = [&](std::int32_t i,
                                                             bool redirect) -> std::int32_t {
    if (redirect && i == site.ancestor) i = site.descendant;
    const auto& n = tree.nodes[i];
    if (tree.is_leaf(i)) return out.add_leaf(n.label);
    std::int32_t l = copy(n.left, redirect);
    std::int32_t r = copy(n.right, redirect);
    return out.add_node(n.label, l, r);
  };
  if (tree.root == site.ancestor) {
    out.root = copy(site.descendant, false);
  } else {
    out.root = copy(tree.root, true);
  }
  return out;
}

bool removable(const PseudoLoop& loop, InnerLoopSite site) {
  check_site(loop.tree, site);
  std::int32_t marked = marked_leaf_index(loop);
  bool under_ancestor = loop.tree.is_proper_descendant(site.ancestor, marked);
  bool under_descendant =
      marked == site.descendant || loop.tree.is_proper_descendant(site.descendant, marked);
  if (under_ancestor && !under_descendant) return false;  // contraction loses the marked leaf
  std::size_t removed = leaves_under(loop.tree, site.ancestor) - leaves_under(loop.tree, site.descendant);
  return loop.tree.leaf_count() - removed >= 2;
}

namespace {

// Inner-pseudo-loop-free subtrees rooted at a label: along every
// root-to-node path all labels are distinct, so depth <= |V| - 1. Memoized
// per (label, banned ancestor set).
class SubtreeEnumerator {
 public:
  explicit SubtreeEnumerator(const ReplacementSystem& system) : system_(system) {}

  const std::vector<CompositionTree>& trees(FunctionId label, std::uint32_t banned) {
    auto key = std::make_pair(label, banned);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::vector<CompositionTree> out;
    if ((banned & (1u << label)) == 0) {
      out.push_back(CompositionTree::leaf(label));
      auto [u, w] = system_.rule[label];
      std::uint32_t child_banned = banned | (1u << label);
      const auto& lefts = trees(u, child_banned);
      const auto& rights = trees(w, child_banned);
      for (const auto& lt : lefts) {
        for (const auto& rt : rights) {
          CompositionTree t;
          std::int32_t l = t.splice(lt);
          std::int32_t r = t.splice(rt);
          t.root = t.add_node(label, l, r);
          out.push_back(std::move(t));
        }
      }
    }
    return memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  const ReplacementSystem& system_;
  std::map<std::pair<FunctionId, std::uint32_t>, std::vector<CompositionTree>> memo_;
};

struct MainPathStep {
  FunctionId label;    // node on the main path
  Side side;           // child continuing the main path
  FunctionId sibling;  // label of the off-path child
};

constexpr std::size_t kMaxEnumeratedLoops = 2'000'000;

}  // namespace

std::vector<PseudoLoop> enumerate_reduced_loops(const ReplacementSystem& system,
                                                std::size_t cap) {
  require_valid(system);
  if (system.size() > cap || system.size() > 20) {
    throw EnumerationTooLargeError(
        "enumeration-too-large: " + std::to_string(system.size()) +
        " functions exceeds the enumeration cap of " + std::to_string(std::min(cap, std::size_t{20})));
  }
  SubtreeEnumerator subtrees(system);
  std::vector<PseudoLoop> loops;
  std::size_t total = 0;

  std::vector<MainPathStep> steps;
  std::uint32_t visited = 0;

  auto assemble = [&]() {
    // One loop per combination of off-path subtree choices.
    std::size_t combos = 1;
    std::vector<const std::vector<CompositionTree>*> choices;
    choices.reserve(steps.size());
    for (const auto& step : steps) {
      const auto& ts = subtrees.trees(step.sibling, 0);
      combos *= ts.size();
      choices.push_back(&ts);
    }
    total += combos;
    if (total > kMaxEnumeratedLoops) {
      throw EnumerationTooLargeError("enumeration-too-large: more than " +
                                     std::to_string(kMaxEnumeratedLoops) + " reduced pseudo-loops");
    }
    std::vector<std::size_t> pick(steps.size(), 0);
    for (std::size_t combo = 0; combo < combos; ++combo) {
      PseudoLoop loop;
      std::int32_t cur = loop.tree.add_leaf(steps.front().label);  // marked leaf
      for (std::size_t i = steps.size(); i-- > 0;) {
        std::int32_t sib = loop.tree.splice((*choices[i])[pick[i]]);
        cur = steps[i].side == Side::left ? loop.tree.add_node(steps[i].label, cur, sib)
                                          : loop.tree.add_node(steps[i].label, sib, cur);
      }
      loop.tree.root = cur;
      loop.marked_path.reserve(steps.size());
      for (const auto& step : steps) loop.marked_path.push_back(step.side);
      loops.push_back(std::move(loop));
      for (std::size_t i = pick.size(); i-- > 0;) {
        if (++pick[i] < choices[i]->size()) break;
        pick[i] = 0;
      }
    }
  };

  std::function<void(FunctionId, FunctionId)> extend = [&](FunctionId root, FunctionId v) {
    auto [u, w] = system.rule[v];
    for (Side side : {Side::left, Side::right}) {
      // With equal children both sides continue into the same label; keep
      // only the left variant as the canonical one.
      if (side == Side::right && u == w) continue;
      FunctionId next = side == Side::left ? u : w;
      FunctionId sibling = side == Side::left ? w : u;
      steps.push_back({v, side, sibling});
      if (next == root) {
        assemble();
      } else if ((visited & (1u << next)) == 0) {
        visited |= 1u << next;
        extend(root, next);
        visited &= ~(1u << next);
      }
      steps.pop_back();
    }
  };

  for (FunctionId root = 0; root < system.size(); ++root) {
    visited = 1u << root;
    extend(root, root);
  }

  // Deterministic order: best rate first, small loops before large ones.
  struct Key {
    Rational r;
    std::size_t size;
    std::string text;
  };
  std::vector<Key> keys;
  keys.reserve(loops.size());
  for (const auto& loop : loops) {
    keys.push_back({rate(system, loop), loop_size(loop),
                    tree_key(system, loop.tree) + "|" + path_string(loop.marked_path)});
  }
  std::vector<std::size_t> order(loops.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (keys[a].r != keys[b].r) return keys[a].r > keys[b].r;
    if (keys[a].size != keys[b].size) return keys[a].size < keys[b].size;
    return keys[a].text < keys[b].text;
  });
  std::vector<PseudoLoop> sorted;
  sorted.reserve(loops.size());
  for (std::size_t i : order) sorted.push_back(std::move(loops[i]));
  return sorted;
}

mpz_class reduced_loop_leaf_bound(const ReplacementSystem& system) {
  mpz_class b = 1;
  mpz_mul_2exp(b.get_mpz_t(), b.get_mpz_t(), system.size() - 1);
  return b * static_cast<long>(system.size());
}

std::string loop_text(const ReplacementSystem& system, const PseudoLoop& loop) {
  std::int32_t marked = marked_leaf_index(loop);
  std::ostringstream os;
  std::function<void(std::int32_t, int)> walk = [&](std::int32_t i, int depth) {
    for (int d = 0; d < depth; ++d) os << "  ";
    os << system.name(loop.tree.nodes[i].label);
    if (loop.tree.is_leaf(i)) {
      os << " = " << system.c(loop.tree.nodes[i].label);
      if (i == marked) os << " *";
    }
    os << "\n";
    if (!loop.tree.is_leaf(i)) {
      walk(loop.tree.nodes[i].left, depth + 1);
      walk(loop.tree.nodes[i].right, depth + 1);
    }
  };
  walk(loop.tree.root, 0);
  os << "marked-path: " << path_string(loop.marked_path) << "\n";
  return os.str();
}

std::string loop_dot(const ReplacementSystem& system, const PseudoLoop& loop) {
  std::int32_t marked = marked_leaf_index(loop);
  // Nodes on the main path, for edge emphasis.
  std::vector<std::int32_t> main;
  std::int32_t cur = loop.tree.root;
  main.push_back(cur);
  for (Side s : loop.marked_path) {
    cur = s == Side::left ? loop.tree.nodes[cur].left : loop.tree.nodes[cur].right;
    main.push_back(cur);
  }
  auto on_main = [&](std::int32_t i) {
    return std::find(main.begin(), main.end(), i) != main.end();
  };
  std::ostringstream os;
  os << "digraph pseudo_loop {\n  node [shape=box];\n";
  for (std::int32_t i : loop.tree.subtree_nodes(loop.tree.root)) {
    os << "  n" << i << " [label=\"" << system.name(loop.tree.nodes[i].label);
    if (loop.tree.is_leaf(i)) os << " = " << system.c(loop.tree.nodes[i].label);
    os << "\"";
    if (i == marked) os << ", peripheries=2";
    os << "];\n";
  }
  for (std::int32_t i : loop.tree.subtree_nodes(loop.tree.root)) {
    if (loop.tree.is_leaf(i)) continue;
    for (std::int32_t child : {loop.tree.nodes[i].left, loop.tree.nodes[i].right}) {
      os << "  n" << i << " -> n" << child;
      if (on_main(i) && on_main(child)) os << " [penwidth=2]";
      os << ";\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace growth
