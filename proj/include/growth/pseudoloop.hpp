#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "growth/tree.hpp"

namespace growth {

enum class Side : std::uint8_t { left, right };
using LeafPath = std::vector<Side>;

std::string path_string(const LeafPath& path);            // "LRL"
LeafPath parse_path(std::string_view text);               // throws std::invalid_argument

// Composition tree with a marked leaf that carries the same label as the
// root. Pumping (replacing the marked leaf by a fresh copy of the tree)
// grows trees at a fixed rate: value per added leaf.
struct PseudoLoop {
  CompositionTree tree;
  LeafPath marked_path;  // root-to-marked-leaf steps
};

// Extra codes on top of tree validation: "bad-marked-path",
// "marked-label-mismatch", "degenerate-loop" (fewer than 2 leaves).
std::vector<Violation> validate_loop(const ReplacementSystem& system, const PseudoLoop& loop);

// Node reached by following path from the root; throws std::invalid_argument
// if a step walks off a leaf.
std::int32_t node_at(const CompositionTree& tree, const LeafPath& path);
std::int32_t marked_leaf_index(const PseudoLoop& loop);

// Sum of leaf values excluding the marked leaf.
Rational loop_value(const ReplacementSystem& system, const PseudoLoop& loop);
// Number of leaves excluding the marked one.
std::size_t loop_size(const PseudoLoop& loop);
Rational rate(const ReplacementSystem& system, const PseudoLoop& loop);

// k-fold pumping T^k; leaf_count = k*q + 1 and value = k*value(loop) + c_root.
CompositionTree pump(const PseudoLoop& loop, std::size_t k);

// Equal-label (ancestor, proper descendant) pair.
struct InnerLoopSite {
  std::int32_t ancestor;
  std::int32_t descendant;
};

std::vector<InnerLoopSite> find_inner_loops(const CompositionTree& tree);

// Contracts the site: the subtree at ancestor is replaced by the subtree at
// descendant. Throws std::invalid_argument on an invalid site.
CompositionTree remove_inner_loop(const CompositionTree& tree, InnerLoopSite site);

// A site is removable when contraction still leaves a valid pseudo-loop:
// the marked leaf survives and at least two leaves remain.
bool removable(const PseudoLoop& loop, InnerLoopSite site);

class EnumerationTooLargeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultEnumerationCap = 4;

// Every pseudo-loop with no removable inner pseudo-loop: the internal main
// path is a simple cycle of the dependency graph and every off-path subtree
// is inner-pseudo-loop-free. The maximum rate over the result equals the
// growth rate. Deterministically sorted: rate descending, then leaf count
// ascending, then lexicographic. This is the brute-force oracle; it refuses
// systems larger than cap ("enumeration-too-large").
std::vector<PseudoLoop> enumerate_reduced_loops(const ReplacementSystem& system,
                                                std::size_t cap = kDefaultEnumerationCap);

// |V| * 2^(|V|-1): maximum non-marked leaf count over reduced pseudo-loops.
mpz_class reduced_loop_leaf_bound(const ReplacementSystem& system);

// Tree form with the marked leaf starred, plus the L/R path line.
std::string loop_text(const ReplacementSystem& system, const PseudoLoop& loop);
// Dot form; main-path edges are emphasized, the marked leaf doubled.
std::string loop_dot(const ReplacementSystem& system, const PseudoLoop& loop);

}  // namespace growth
