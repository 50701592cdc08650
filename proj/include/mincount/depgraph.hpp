#pragma once

#include "mincount/formula.hpp"

#include <iosfwd>
#include <utility>
#include <vector>

namespace mincount {

/// Directed graph over the variables of a formula with an arc a -> b whenever
/// some clause contains the negative literal of a and the positive literal
/// of b.
class DepGraph {
public:
  DepGraph() = default;
  explicit DepGraph(Var num_nodes) : succ_(num_nodes + 1) {}

  Var num_nodes() const {
    return succ_.empty() ? 0 : static_cast<Var>(succ_.size() - 1);
  }
  /// Successors of `v`, ascending and deduplicated.
  const std::vector<Var> &successors(Var v) const { return succ_[v]; }
  bool has_arc(Var from, Var to) const;
  std::size_t num_arcs() const;
  /// All arcs in lexicographic order.
  std::vector<std::pair<Var, Var>> arcs() const;

  void add_arc(Var from, Var to);

private:
  std::vector<std::vector<Var>> succ_;
};

/// Strongly connected components in reverse topological order of discovery;
/// `topological_order` lists component indices so that every arc between
/// distinct components goes from an earlier to a later entry.
struct SccDecomposition {
  std::vector<std::vector<Var>> components;
  std::vector<std::size_t> component_of; // indexed by variable, [0] unused
  std::vector<std::size_t> topological_order;
};

DepGraph build_dependency_graph(const CnfFormula &formula);

/// Tarjan's algorithm with an explicit stack.
SccDecomposition strongly_connected_components(const DepGraph &graph);

bool is_acyclic(const DepGraph &graph);
bool is_head_cycle_free(const CnfFormula &formula, const DepGraph &graph);

void write_dot(std::ostream &out, const DepGraph &graph);

} // namespace mincount
