#include "growth/certificates.hpp"

#include <algorithm>
#include <functional>

namespace growth {

namespace {

void check_cert_size(const ReplacementSystem& system, std::size_t got, const char* what,
                     std::vector<Violation>& out) {
  if (got != system.size()) {
    out.push_back({std::string(what) + "-size",
                   "certificate has " + std::to_string(got) + " entries for " +
                       std::to_string(system.size()) + " functions",
                   -1});
  }
}

// Justification for membership in the decomposable set: either the ground
// equality z_v = c_v - theta, or a pair whose children were justified
// earlier. Ranks strictly decrease toward the ground, so unfolding a
// justification always yields a finite tree.
struct Decomposition {
  enum class Kind : std::uint8_t { none, ground, pair };
  std::vector<Kind> kind;
};

Decomposition decompose(const ReplacementSystem& system, const PrimalCertificate& cert) {
  Decomposition d;
  d.kind.assign(system.size(), Decomposition::Kind::none);
  bool changed = true;
  while (changed) {
    changed = false;
    for (FunctionId v = 0; v < system.size(); ++v) {
      if (d.kind[v] != Decomposition::Kind::none) continue;
      if (cert.z[v] == system.c(v) - cert.theta) {
        d.kind[v] = Decomposition::Kind::ground;
        changed = true;
        continue;
      }
      auto [u, w] = system.rule[v];
      if (d.kind[u] != Decomposition::Kind::none && d.kind[w] != Decomposition::Kind::none &&
          cert.z[v] == cert.z[u] + cert.z[w]) {
        d.kind[v] = Decomposition::Kind::pair;
        changed = true;
      }
    }
  }
  return d;
}

void require_cert(const ReplacementSystem& system, const PrimalCertificate& cert) {
  if (!check_primal(system, cert).empty()) {
    throw std::invalid_argument("primal certificate is infeasible");
  }
}

}  // namespace

std::vector<Violation> check_primal(const ReplacementSystem& system,
                                    const PrimalCertificate& cert) {
  std::vector<Violation> out;
  require_valid(system);
  check_cert_size(system, cert.z.size(), "primal", out);
  if (!out.empty()) return out;
  for (FunctionId v = 0; v < system.size(); ++v) {
    Rational ground = system.c(v) - cert.theta;
    if (cert.z[v] < ground) {
      out.push_back({"primal-ground",
                     "z_" + system.name(v) + " = " + cert.z[v].str() + " < c - theta = " +
                         ground.str(),
                     static_cast<std::int64_t>(v)});
    }
    auto [u, w] = system.rule[v];
    Rational pair = cert.z[u] + cert.z[w];
    if (cert.z[v] < pair) {
      out.push_back({"primal-pair",
                     "z_" + system.name(v) + " = " + cert.z[v].str() + " < z_" + system.name(u) +
                         " + z_" + system.name(w) + " = " + pair.str(),
                     static_cast<std::int64_t>(v)});
    }
  }
  return out;
}

std::vector<FunctionId> decomposable_set(const ReplacementSystem& system,
                                         const PrimalCertificate& cert) {
  require_cert(system, cert);
  Decomposition d = decompose(system, cert);
  std::vector<FunctionId> out;
  for (FunctionId v = 0; v < system.size(); ++v) {
    if (d.kind[v] != Decomposition::Kind::none) out.push_back(v);
  }
  return out;
}

Digraph decomposition_graph(const ReplacementSystem& system, const PrimalCertificate& cert) {
  require_cert(system, cert);
  Decomposition d = decompose(system, cert);
  Digraph g;
  g.adj.resize(system.size());
  for (FunctionId v = 0; v < system.size(); ++v) {
    auto [u, w] = system.rule[v];
    if (cert.z[v] != cert.z[u] + cert.z[w]) continue;
    if (d.kind[w] != Decomposition::Kind::none) g.adj[v].push_back(u);
    if (d.kind[u] != Decomposition::Kind::none && w != u) g.adj[v].push_back(w);
    std::sort(g.adj[v].begin(), g.adj[v].end());
    g.adj[v].erase(std::unique(g.adj[v].begin(), g.adj[v].end()), g.adj[v].end());
  }
  return g;
}

namespace {

std::int32_t build_decomposition_tree(const ReplacementSystem& system,
                                      const PrimalCertificate& cert, const Decomposition& d,
                                      FunctionId v, CompositionTree& tree) {
  if (d.kind[v] == Decomposition::Kind::none) {
    throw std::logic_error("internal: decomposition tree requested for an unjustified function");
  }
  if (d.kind[v] == Decomposition::Kind::ground) return tree.add_leaf(v);
  auto [u, w] = system.rule[v];
  std::int32_t l = build_decomposition_tree(system, cert, d, u, tree);
  std::int32_t r = build_decomposition_tree(system, cert, d, w, tree);
  return tree.add_node(v, l, r);
}

}  // namespace

CompositionTree decomposition_tree(const ReplacementSystem& system,
                                   const PrimalCertificate& cert, FunctionId v) {
  require_cert(system, cert);
  Decomposition d = decompose(system, cert);
  if (v >= system.size() || d.kind[v] == Decomposition::Kind::none) {
    throw std::invalid_argument("function is not decomposable");
  }
  CompositionTree tree;
  tree.root = build_decomposition_tree(system, cert, d, v, tree);
  return tree;
}

PseudoLoop pseudo_loop_from_optimum(const ReplacementSystem& system,
                                    const PrimalCertificate& cert) {
  require_cert(system, cert);
  Digraph g = decomposition_graph(system, cert);
  Decomposition d = decompose(system, cert);

  // First cycle by depth-first search from the smallest id.
  std::vector<FunctionId> cycle;
  std::vector<std::uint8_t> state(system.size(), 0);  // 0 new, 1 on stack, 2 done
  std::vector<FunctionId> stack;
  std::function<bool(FunctionId)> dfs = [&](FunctionId v) -> bool {
    state[v] = 1;
    stack.push_back(v);
    for (FunctionId u : g.adj[v]) {
      if (state[u] == 1) {
        auto it = std::find(stack.begin(), stack.end(), u);
        cycle.assign(it, stack.end());
        return true;
      }
      if (state[u] == 0 && dfs(u)) return true;
    }
    stack.pop_back();
    state[v] = 2;
    return false;
  };
  for (FunctionId v = 0; v < system.size() && cycle.empty(); ++v) {
    if (state[v] == 0) dfs(v);
  }
  if (cycle.empty()) {
    throw NotOptimalError("not-optimal: theta exceeds the growth rate, no decomposition cycle");
  }

  // Main path follows the cycle; each step hangs the sibling's
  // decomposition tree off the path.
  PseudoLoop loop;
  std::int32_t cur = loop.tree.add_leaf(cycle.front());  // marked leaf
  LeafPath reversed;
  for (std::size_t i = cycle.size(); i-- > 0;) {
    FunctionId v = cycle[i];
    FunctionId next = cycle[(i + 1) % cycle.size()];
    auto [u, w] = system.rule[v];
    Side side;
    if (u == next && cert.z[v] == cert.z[u] + cert.z[w] &&
        d.kind[w] != Decomposition::Kind::none) {
      side = Side::left;
    } else if (w == next && cert.z[v] == cert.z[u] + cert.z[w] &&
               d.kind[u] != Decomposition::Kind::none) {
      side = Side::right;
    } else {
      throw std::logic_error("internal: decomposition cycle edge without a matching rule slot");
    }
    FunctionId sibling = side == Side::left ? w : u;
    std::int32_t sib = build_decomposition_tree(system, cert, d, sibling, loop.tree);
    cur = side == Side::left ? loop.tree.add_node(v, cur, sib) : loop.tree.add_node(v, sib, cur);
    reversed.push_back(side);
  }
  loop.tree.root = cur;
  loop.marked_path.assign(reversed.rbegin(), reversed.rend());
  return loop;
}

DualCertificate dual_from_pseudo_loop(const ReplacementSystem& system, const PseudoLoop& loop) {
  DualCertificate cert;
  cert.x.assign(system.size(), Rational(0));
  cert.y.assign(system.size(), Rational(0));
  std::int32_t marked = marked_leaf_index(loop);
  for (std::int32_t i : loop.tree.subtree_nodes(loop.tree.root)) {
    FunctionId label = loop.tree.nodes[i].label;
    if (loop.tree.is_leaf(i)) {
      if (i != marked) cert.x[label] += 1;
    } else {
      cert.y[label] += 1;
    }
  }
  Rational total = 0;
  for (const Rational& xv : cert.x) total += xv;
  for (FunctionId v = 0; v < system.size(); ++v) {
    cert.x[v] /= total;
    cert.y[v] /= total;
  }
  return cert;
}

Rational dual_objective(const ReplacementSystem& system, const DualCertificate& cert) {
  Rational obj = 0;
  for (FunctionId v = 0; v < system.size(); ++v) obj += system.c(v) * cert.x[v];
  return obj;
}

std::vector<Violation> check_dual(const ReplacementSystem& system, const DualCertificate& cert) {
  std::vector<Violation> out;
  require_valid(system);
  check_cert_size(system, cert.x.size(), "dual", out);
  check_cert_size(system, cert.y.size(), "dual", out);
  if (!out.empty()) return out;
  Rational sum = 0;
  for (FunctionId v = 0; v < system.size(); ++v) {
    if (cert.x[v] < Rational(0)) {
      out.push_back({"dual-negative", "x_" + system.name(v) + " = " + cert.x[v].str() + " < 0",
                     static_cast<std::int64_t>(v)});
    }
    if (cert.y[v] < Rational(0)) {
      out.push_back({"dual-negative", "y_" + system.name(v) + " = " + cert.y[v].str() + " < 0",
                     static_cast<std::int64_t>(v)});
    }
    sum += cert.x[v];
  }
  for (FunctionId v = 0; v < system.size(); ++v) {
    Rational inflow = 0;
    for (FunctionId u = 0; u < system.size(); ++u) {
      auto [a, b] = system.rule[u];
      if (a == v) inflow += cert.y[u];
      if (b == v) inflow += cert.y[u];
    }
    Rational lhs = cert.x[v] + cert.y[v];
    if (lhs != inflow) {
      out.push_back({"dual-flow",
                     "flow at " + system.name(v) + ": x + y = " + lhs.str() +
                         " but incoming y sum = " + inflow.str(),
                     static_cast<std::int64_t>(v)});
    }
  }
  if (sum != Rational(1)) {
    out.push_back({"dual-normalization", "sum of x is " + sum.str() + ", expected 1", -1});
  }
  return out;
}

}  // namespace growth
