#include "mincount/counter.hpp"

#include "mincount/depgraph.hpp"
#include "mincount/sat.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace mincount {

const char *to_string(CountPath path) {
  switch (path) {
  case CountPath::Models:
    return "models";
  case CountPath::Acyclic:
    return "acyclic";
  case CountPath::General:
    return "general";
  }
  return "?";
}

std::string to_string(const BigInt &value) { return value.str(); }

namespace {

enum class Mode { Models, Pair };

/// A subproblem: residual formulas, the assignment so far, and the variables
/// this subproblem owns.
struct Node {
  CnfFormula p;
  CnfFormula q;
  Assignment tau;
  std::vector<Var> scope;
};

class DisjointSets {
public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b)
      parent_[std::max(a, b)] = std::min(a, b);
  }

private:
  std::vector<std::size_t> parent_;
};

std::vector<bool> occurrence_marks(Var num_vars, const CnfFormula &formula) {
  std::vector<bool> marks(num_vars + 1, false);
  for (const Clause &c : formula.clauses())
    for (Lit l : c)
      marks[l.var()] = true;
  return marks;
}

/// Connected components of the clause co-occurrence graph over P and Q.
std::vector<Node> split_components(const Node &node) {
  const Var n = node.p.num_vars();
  DisjointSets sets(n + 1);
  std::vector<bool> occurs(n + 1, false);
  for (const CnfFormula *f : {&node.p, &node.q}) {
    for (const Clause &c : f->clauses()) {
      for (Lit l : c) {
        occurs[l.var()] = true;
        sets.unite(c.front().var(), l.var());
      }
    }
  }

  std::vector<std::size_t> slot(n + 1, 0);
  std::vector<Node> parts;
  for (Var v = 1; v <= n; ++v) {
    if (!occurs[v])
      continue;
    std::size_t root = sets.find(v);
    if (root == v) {
      slot[v] = parts.size();
      parts.push_back({node.p.skeleton(), node.q.skeleton(), {}, {}});
    }
    parts[slot[root]].scope.push_back(v);
  }
  for (const Clause &c : node.p.clauses())
    parts[slot[sets.find(c.front().var())]].p.add_clause(c);
  for (const Clause &c : node.q.clauses())
    parts[slot[sets.find(c.front().var())]].q.add_clause(c);
  for (Node &part : parts)
    part.tau = node.tau;
  return parts;
}

/// Outcome of processing one node: either a final count or children whose
/// counts combine by sum (a decision) or product (a decomposition).
struct Expansion {
  TraceNode::Kind kind = TraceNode::Kind::Leaf;
  BigInt value = 0;
  BigInt multiplier = 1;
  std::vector<Node> children;
  Var branch_var = 0;
  std::optional<Assignment> base_assignment;

  bool is_leaf() const {
    return kind != TraceNode::Kind::Decision && kind != TraceNode::Kind::Product;
  }
};

class Engine {
public:
  Engine(Mode mode, const CopyVarMap &copy_map, const CounterOptions &options,
         CountResult &out)
      : mode_(mode), copy_map_(copy_map), options_(options), out_(out) {}

  BigInt run(Node root);

  /// Justification check at a node whose P is empty. Fills `record` with the
  /// completed assignment when the leaf is accepted and recording is on.
  int base_case(Node &node, std::optional<Assignment> *record);

private:
  Expansion expand(Node node);
  bool copy_side_dead(const Node &node, const std::vector<bool> &in_q) const;
  Var pick_branch_var(const CnfFormula &p) const;
  std::size_t record(const Expansion &e, std::optional<std::size_t> parent);

  Mode mode_;
  const CopyVarMap &copy_map_;
  const CounterOptions &options_;
  CountResult &out_;
};

bool Engine::copy_side_dead(const Node &node, const std::vector<bool> &in_q) const {
  for (Var v : node.scope) {
    Var x = 0;
    if (copy_map_.is_copy(v))
      x = copy_map_.original_of(v);
    else if (node.p.kind_of(v) == VarKind::Original)
      x = v;
    else
      continue;
    if (node.tau.value(x) != Value::True)
      continue;
    Var c = copy_map_.copy_of(x);
    Value cv = node.tau.value(c);
    // A true atom whose copy is false, or whose copy no clause constrains,
    // can be dropped from every extension: no minimal model lies below.
    if (cv == Value::False || (cv == Value::Unassigned && !in_q[c]))
      return true;
  }
  return false;
}

Var Engine::pick_branch_var(const CnfFormula &p) const {
  const Var n = p.num_vars();
  std::vector<std::uint32_t> occurrences(n + 1, 0);
  for (const Clause &c : p.clauses())
    for (Lit l : c)
      ++occurrences[l.var()];

  auto best_of = [&](auto &&eligible) {
    Var best = 0;
    for (Var v = 1; v <= n; ++v) {
      if (occurrences[v] == 0 || !eligible(v))
        continue;
      if (options_.branch.heuristic == BranchHeuristic::MinId)
        return v;
      if (best == 0 || occurrences[v] > occurrences[best])
        best = v;
    }
    return best;
  };
  Var v = best_of([&](Var u) { return p.kind_of(u) == VarKind::Original; });
  if (v != 0)
    return v;
  // Auxiliaries are fixed by propagation once their originals are set, so
  // this only triggers on hand-built inputs without originals.
  return best_of([](Var) { return true; });
}

int Engine::base_case(Node &node, std::optional<Assignment> *record) {
  ++out_.stats.base_cases;
  for (Var v : node.scope)
    if (node.p.kind_of(v) == VarKind::Original && !node.tau.is_assigned(v))
      node.tau.assign(Lit::neg(v), Reason::Decision);

  auto is_copy = [this](Var v) { return copy_map_.is_copy(v); };
  PropagationResult qr = propagate_to_fixpoint(node.q, std::move(node.tau), is_copy);
  if (std::holds_alternative<Conflict>(qr)) {
    ++out_.stats.copy_prunes;
    return 0;
  }
  auto &[q, tau] = std::get<Propagated>(qr);
  node.tau = std::move(tau);
  node.q = std::move(q);

  std::vector<bool> in_q = occurrence_marks(node.q.num_vars(), node.q);
  if (copy_side_dead(node, in_q))
    return 0;

  Clause some_copy_false;
  for (Var v : node.scope) {
    if (!copy_map_.is_copy(v) || node.tau.is_assigned(v))
      continue;
    if (node.tau.value(copy_map_.original_of(v)) == Value::True)
      some_copy_false.push_back(Lit::neg(v));
  }

  int accepted = 1;
  if (!some_copy_false.empty()) {
    CnfFormula query = node.q;
    query.add_clause(std::move(some_copy_false));
    ++out_.stats.sat_calls;
    accepted = solve(query).satisfiable() ? 0 : 1;
  }
  if (accepted && record)
    *record = node.tau;
  return accepted;
}

Expansion Engine::expand(Node node) {
  Expansion e;
  const std::size_t trail_before = node.tau.num_assigned();

  PropagationResult pr = propagate_to_fixpoint(node.p, std::move(node.tau));
  if (std::holds_alternative<Conflict>(pr)) {
    ++out_.stats.conflicts;
    e.kind = TraceNode::Kind::Conflict;
    return e;
  }
  node.p = std::move(std::get<Propagated>(pr).formula);
  node.tau = std::move(std::get<Propagated>(pr).assignment);

  std::vector<bool> in_q;
  if (mode_ == Mode::Pair) {
    auto is_copy = [this](Var v) { return copy_map_.is_copy(v); };
    PropagationResult qr = propagate_to_fixpoint(node.q, std::move(node.tau), is_copy);
    if (std::holds_alternative<Conflict>(qr)) {
      ++out_.stats.copy_prunes;
      e.kind = TraceNode::Kind::Conflict;
      return e;
    }
    node.q = std::move(std::get<Propagated>(qr).formula);
    node.tau = std::move(std::get<Propagated>(qr).assignment);
    in_q = occurrence_marks(node.q.num_vars(), node.q);
  }
  out_.stats.propagations += node.tau.num_assigned() - trail_before;

  if (mode_ == Mode::Pair && copy_side_dead(node, in_q)) {
    ++out_.stats.copy_prunes;
    e.kind = TraceNode::Kind::Conflict;
    return e;
  }

  std::vector<bool> in_p = occurrence_marks(node.p.num_vars(), node.p);
  if (mode_ == Mode::Models) {
    unsigned free_originals = 0;
    for (Var v : node.scope)
      if (!node.tau.is_assigned(v) && !in_p[v] &&
          node.p.kind_of(v) == VarKind::Original)
        ++free_originals;
    e.multiplier = BigInt(1) << free_originals;
  }

  if (node.p.empty()) {
    if (mode_ == Mode::Models) {
      e.kind = TraceNode::Kind::Leaf;
      e.value = e.multiplier;
    } else {
      e.kind = TraceNode::Kind::BaseCase;
      e.value = base_case(node, options_.record_trace ? &e.base_assignment : nullptr);
    }
    return e;
  }

  node.scope.clear();
  for (Var v = 1; v <= node.p.num_vars(); ++v)
    if (in_p[v] || (!in_q.empty() && in_q[v]))
      node.scope.push_back(v);

  if (options_.decompose) {
    std::vector<Node> parts = split_components(node);
    if (parts.size() > 1) {
      out_.stats.components += parts.size();
      e.kind = TraceNode::Kind::Product;
      e.children = std::move(parts);
      return e;
    }
  }

  Var x = pick_branch_var(node.p);
  ++out_.stats.decisions;
  e.kind = TraceNode::Kind::Decision;
  e.branch_var = x;
  Node negative = node;
  negative.tau.assign(Lit::neg(x), Reason::Decision);
  node.tau.assign(Lit::pos(x), Reason::Decision);
  e.children.push_back(std::move(negative));
  e.children.push_back(std::move(node));
  return e;
}

std::size_t Engine::record(const Expansion &e, std::optional<std::size_t> parent) {
  TraceNode t;
  t.kind = e.kind;
  t.count = e.value;
  t.multiplier = e.multiplier;
  t.parent = parent;
  t.branch_var = e.branch_var;
  t.assignment = e.base_assignment;
  std::size_t index = out_.trace.size();
  out_.trace.push_back(std::move(t));
  if (parent)
    out_.trace[*parent].children.push_back(index);
  return index;
}

BigInt Engine::run(Node root) {
  struct Frame {
    bool product;
    BigInt multiplier;
    BigInt acc;
    std::vector<Node> children;
    std::size_t next_child = 0;
    std::size_t trace_index = 0;
  };
  std::vector<Frame> stack;
  BigInt result = 0;

  auto deliver = [&](const BigInt &value) {
    if (stack.empty()) {
      result = value;
      return;
    }
    Frame &parent = stack.back();
    if (parent.product)
      parent.acc *= value;
    else
      parent.acc += value;
  };

  auto visit = [&](Node node) {
    std::optional<std::size_t> parent;
    if (!stack.empty())
      parent = stack.back().trace_index;
    Expansion e = expand(std::move(node));
    std::size_t index = options_.record_trace ? record(e, parent) : 0;
    if (e.is_leaf()) {
      deliver(e.value);
      return;
    }
    bool product = e.kind == TraceNode::Kind::Product;
    stack.push_back({product, e.multiplier, BigInt(product ? 1 : 0),
                     std::move(e.children), 0, index});
  };

  visit(std::move(root));
  while (!stack.empty()) {
    Frame &frame = stack.back();
    bool done = frame.next_child == frame.children.size() ||
                (frame.product && frame.acc == 0);
    if (!done) {
      Node child = std::move(frame.children[frame.next_child++]);
      visit(std::move(child));
      continue;
    }
    BigInt value = frame.multiplier * frame.acc;
    if (options_.record_trace)
      out_.trace[frame.trace_index].count = value;
    stack.pop_back();
    deliver(value);
  }
  return result;
}

std::vector<Var> all_vars(Var n) {
  std::vector<Var> vars(n);
  std::iota(vars.begin(), vars.end(), Var{1});
  return vars;
}

} // namespace

CountResult count_models(const CnfFormula &formula, const CounterOptions &options) {
  CountResult result;
  result.path = CountPath::Models;
  CopyVarMap no_copies;
  Engine engine(Mode::Models, no_copies, options, result);
  Node root{formula, formula.skeleton(), Assignment(formula.num_vars()),
            all_vars(formula.num_vars())};
  result.count = engine.run(std::move(root));
  return result;
}

CountResult count_pair(const PairState &state, const CounterOptions &options) {
  CountResult result;
  result.path = CountPath::General;
  Engine engine(Mode::Pair, state.copy_map, options, result);
  Assignment tau = state.tau;
  tau.reserve_vars(state.p.num_vars());
  Node root{state.p, state.q, std::move(tau), all_vars(state.p.num_vars())};
  result.count = engine.run(std::move(root));
  return result;
}

CountResult count_minimal(const CnfFormula &formula, const CounterOptions &options) {
  bool acyclic = is_acyclic(build_dependency_graph(formula));
  if (options.strategy == Strategy::Acyclic && !acyclic)
    throw ContractViolation("acyclic strategy requested for a cyclic formula");

  PairState pair = build_pair(formula);
  CountResult result;
  bool use_acyclic = options.strategy == Strategy::Acyclic ||
                     (options.strategy == Strategy::Auto && acyclic);
  if (use_acyclic) {
    result = count_models(pair.p, options);
    result.path = CountPath::Acyclic;
  } else {
    result = count_pair(pair, options);
  }
  result.acyclic = acyclic;
  return result;
}

std::vector<PairState> decompose(const PairState &state) {
  ConditionResult p = condition(state.p, state.tau);
  ConditionResult q = condition(state.q, state.tau);
  if (std::holds_alternative<Conflict>(p) || std::holds_alternative<Conflict>(q))
    throw ContractViolation("decompose needs a conflict-free conditioned pair");
  Node node{std::move(std::get<CnfFormula>(p)), std::move(std::get<CnfFormula>(q)),
            state.tau, {}};

  std::vector<PairState> out;
  for (Node &part : split_components(node))
    out.push_back({std::move(part.p), std::move(part.q), std::move(part.tau),
                   state.copy_map, state.aux_range});
  return out;
}

int base_case(const PairState &state, CountStats *stats) {
  ConditionResult p = condition(state.p, state.tau);
  if (!std::holds_alternative<CnfFormula>(p) || !std::get<CnfFormula>(p).empty())
    throw ContractViolation("base_case needs P to have no remaining clauses");
  ConditionResult q = condition(state.q, state.tau);
  if (std::holds_alternative<Conflict>(q))
    return 0;

  CountResult scratch;
  CounterOptions options;
  Engine engine(Mode::Pair, state.copy_map, options, scratch);
  Assignment tau = state.tau;
  tau.reserve_vars(state.p.num_vars());
  Node node{std::get<CnfFormula>(p), std::move(std::get<CnfFormula>(q)), std::move(tau),
            all_vars(state.p.num_vars())};
  int accepted = engine.base_case(node, nullptr);
  if (stats) {
    stats->base_cases += scratch.stats.base_cases;
    stats->sat_calls += scratch.stats.sat_calls;
    stats->copy_prunes += scratch.stats.copy_prunes;
  }
  return accepted;
}

} // namespace mincount
