#include "growth/system.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace growth {

std::vector<Violation> validate(const ReplacementSystem& system) {
  std::vector<Violation> out;
  if (system.functions.empty()) {
    out.push_back({"empty-system", "system has no functions", -1});
    return out;
  }
  std::unordered_map<std::string, std::size_t> seen;
  for (std::size_t v = 0; v < system.functions.size(); ++v) {
    const std::string& name = system.functions[v].name;
    if (name.empty()) {
      out.push_back({"empty-name", "function #" + std::to_string(v) + " has an empty name",
                     static_cast<std::int64_t>(v)});
      continue;
    }
    auto [it, inserted] = seen.emplace(name, v);
    if (!inserted) {
      out.push_back({"duplicate-name",
                     "name '" + name + "' is used by functions #" + std::to_string(it->second) +
                         " and #" + std::to_string(v),
                     static_cast<std::int64_t>(v)});
    }
  }
  if (system.rule.size() != system.functions.size()) {
    out.push_back({"missing-rule",
                   "rule table has " + std::to_string(system.rule.size()) + " entries for " +
                       std::to_string(system.functions.size()) + " functions",
                   -1});
    return out;
  }
  for (std::size_t v = 0; v < system.rule.size(); ++v) {
    for (FunctionId target : {system.rule[v].first, system.rule[v].second}) {
      if (target >= system.functions.size()) {
        out.push_back({"unknown-rule-target",
                       "rule of '" + system.functions[v].name + "' points at function #" +
                           std::to_string(target) + " which does not exist",
                       static_cast<std::int64_t>(v)});
      }
    }
  }
  return out;
}

void require_valid(const ReplacementSystem& system) {
  auto violations = validate(system);
  if (violations.empty()) return;
  std::string msg = "invalid replacement system:";
  for (const auto& v : violations) msg += " " + v.code;
  throw std::invalid_argument(msg);
}

bool Digraph::has_edge(FunctionId from, FunctionId to) const {
  const auto& a = adj[from];
  return std::binary_search(a.begin(), a.end(), to);
}

Digraph dependency_graph(const ReplacementSystem& system) {
  Digraph g;
  g.adj.resize(system.size());
  for (FunctionId v = 0; v < system.size(); ++v) {
    auto [u, w] = system.rule[v];
    g.adj[v].push_back(u);
    if (w != u) g.adj[v].push_back(w);
    std::sort(g.adj[v].begin(), g.adj[v].end());
  }
  return g;
}

namespace {

// Iterative Tarjan; components come out in reverse topological order.
struct TarjanState {
  const Digraph& g;
  std::vector<int> index, low;
  std::vector<bool> on_stack;
  std::vector<FunctionId> stack;
  std::vector<std::vector<FunctionId>> components;
  int next_index = 0;

  explicit TarjanState(const Digraph& graph)
      : g(graph), index(graph.size(), -1), low(graph.size(), 0), on_stack(graph.size(), false) {}

  void run(FunctionId root) {
    struct Frame {
      FunctionId v;
      std::size_t edge;
    };
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, edge] = frames.back();
      if (edge < g.adj[v].size()) {
        FunctionId u = g.adj[v][edge++];
        if (index[u] < 0) {
          index[u] = low[u] = next_index++;
          stack.push_back(u);
          on_stack[u] = true;
          frames.push_back({u, 0});
        } else if (on_stack[u]) {
          low[v] = std::min(low[v], index[u]);
        }
      } else {
        if (low[v] == index[v]) {
          std::vector<FunctionId> comp;
          FunctionId u;
          do {
            u = stack.back();
            stack.pop_back();
            on_stack[u] = false;
            comp.push_back(u);
          } while (u != v);
          std::sort(comp.begin(), comp.end());
          components.push_back(std::move(comp));
        }
        FunctionId done = v;
        frames.pop_back();
        if (!frames.empty()) {
          FunctionId parent = frames.back().v;
          low[parent] = std::min(low[parent], low[done]);
        }
      }
    }
  }
};

}  // namespace

Condensation condensation(const ReplacementSystem& system) {
  Digraph g = dependency_graph(system);
  TarjanState tarjan(g);
  for (FunctionId v = 0; v < g.size(); ++v) {
    if (tarjan.index[v] < 0) tarjan.run(v);
  }
  // Tarjan emits sinks first; reverse for topological (greater-first) order.
  std::reverse(tarjan.components.begin(), tarjan.components.end());

  Condensation c;
  c.components = std::move(tarjan.components);
  c.component_of.resize(system.size());
  for (std::size_t i = 0; i < c.components.size(); ++i) {
    for (FunctionId v : c.components[i]) c.component_of[v] = i;
  }
  std::unordered_set<std::uint64_t> seen;
  for (FunctionId v = 0; v < g.size(); ++v) {
    for (FunctionId u : g.adj[v]) {
      std::size_t a = c.component_of[v], b = c.component_of[u];
      if (a == b) continue;
      if (seen.insert((static_cast<std::uint64_t>(a) << 32) | b).second) {
        c.edges.emplace_back(a, b);
      }
    }
  }
  std::sort(c.edges.begin(), c.edges.end());
  c.single.resize(c.components.size());
  for (std::size_t i = 0; i < c.components.size(); ++i) {
    FunctionId only = c.components[i].front();
    c.single[i] = c.components[i].size() == 1 && !g.has_edge(only, only);
  }
  return c;
}

std::pair<Rational, Rational> value_bounds(const ReplacementSystem& system) {
  require_valid(system);
  Rational lo = system.c(0), hi = system.c(0);
  for (FunctionId v = 1; v < system.size(); ++v) {
    if (system.c(v) < lo) lo = system.c(v);
    if (system.c(v) > hi) hi = system.c(v);
  }
  return {lo, hi};
}

}  // namespace growth
