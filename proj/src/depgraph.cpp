#include "mincount/depgraph.hpp"

#include <algorithm>
#include <limits>
#include <ostream>

namespace mincount {

bool DepGraph::has_arc(Var from, Var to) const {
  if (from == 0 || from > num_nodes())
    return false;
  return std::binary_search(succ_[from].begin(), succ_[from].end(), to);
}

std::size_t DepGraph::num_arcs() const {
  std::size_t n = 0;
  for (const auto &s : succ_)
    n += s.size();
  return n;
}

std::vector<std::pair<Var, Var>> DepGraph::arcs() const {
  std::vector<std::pair<Var, Var>> out;
  for (Var v = 1; v <= num_nodes(); ++v)
    for (Var w : succ_[v])
      out.emplace_back(v, w);
  return out;
}

void DepGraph::add_arc(Var from, Var to) {
  if (from == 0 || to == 0 || from > num_nodes() || to > num_nodes())
    throw ContractViolation("arc endpoint outside the graph");
  auto &s = succ_[from];
  auto it = std::lower_bound(s.begin(), s.end(), to);
  if (it == s.end() || *it != to)
    s.insert(it, to);
}

DepGraph build_dependency_graph(const CnfFormula &formula) {
  DepGraph graph(formula.num_original_vars());
  for (const Clause &c : formula.clauses()) {
    for (Lit l : c)
      if (!formula.is_original(l.var()))
        throw ContractViolation("dependency graph is defined over original variables only");
    for (Lit a : c) {
      if (a.positive())
        continue;
      for (Lit b : c)
        if (b.positive())
          graph.add_arc(a.var(), b.var());
    }
  }
  return graph;
}

SccDecomposition strongly_connected_components(const DepGraph &graph) {
  constexpr std::size_t kUnvisited = std::numeric_limits<std::size_t>::max();
  const Var n = graph.num_nodes();

  SccDecomposition result;
  result.component_of.assign(n + 1, kUnvisited);

  std::vector<std::size_t> index(n + 1, kUnvisited);
  std::vector<std::size_t> lowlink(n + 1, 0);
  std::vector<bool> on_stack(n + 1, false);
  std::vector<Var> stack;
  std::size_t next_index = 0;

  struct Frame {
    Var node;
    std::size_t next_succ;
  };
  std::vector<Frame> calls;

  for (Var root = 1; root <= n; ++root) {
    if (index[root] != kUnvisited)
      continue;
    calls.push_back({root, 0});
    index[root] = lowlink[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!calls.empty()) {
      Frame &frame = calls.back();
      const auto &succ = graph.successors(frame.node);
      if (frame.next_succ < succ.size()) {
        Var w = succ[frame.next_succ++];
        if (index[w] == kUnvisited) {
          index[w] = lowlink[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          calls.push_back({w, 0});
        } else if (on_stack[w]) {
          lowlink[frame.node] = std::min(lowlink[frame.node], index[w]);
        }
        continue;
      }

      Var v = frame.node;
      calls.pop_back();
      if (!calls.empty())
        lowlink[calls.back().node] = std::min(lowlink[calls.back().node], lowlink[v]);
      if (lowlink[v] != index[v])
        continue;

      std::vector<Var> component;
      Var w = 0;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        result.component_of[w] = result.components.size();
        component.push_back(w);
      } while (w != v);
      std::sort(component.begin(), component.end());
      result.components.push_back(std::move(component));
    }
  }

  // Tarjan emits sinks first.
  const std::size_t k = result.components.size();
  result.topological_order.resize(k);
  for (std::size_t i = 0; i < k; ++i)
    result.topological_order[i] = k - 1 - i;
  return result;
}

bool is_acyclic(const DepGraph &graph) {
  SccDecomposition scc = strongly_connected_components(graph);
  for (const auto &component : scc.components) {
    if (component.size() > 1)
      return false;
    if (graph.has_arc(component.front(), component.front()))
      return false;
  }
  return true;
}

bool is_head_cycle_free(const CnfFormula &formula, const DepGraph &graph) {
  SccDecomposition scc = strongly_connected_components(graph);
  for (const Clause &c : formula.clauses()) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (!c[i].positive())
        continue;
      for (std::size_t j = i + 1; j < c.size(); ++j) {
        if (!c[j].positive() || c[i].var() == c[j].var())
          continue;
        // Two distinct nodes in one component always lie on a common cycle.
        if (scc.component_of[c[i].var()] == scc.component_of[c[j].var()])
          return false;
      }
    }
  }
  return true;
}

void write_dot(std::ostream &out, const DepGraph &graph) {
  out << "digraph dependency {\n";
  for (Var v = 1; v <= graph.num_nodes(); ++v)
    out << "  " << v << ";\n";
  for (auto [a, b] : graph.arcs())
    out << "  " << a << " -> " << b << ";\n";
  out << "}\n";
}

} // namespace mincount
