#pragma once

#include "mincount/formula.hpp"
#include "mincount/transform.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mincount {

using BigInt = boost::multiprecision::cpp_int;

enum class BranchHeuristic { MinId, MaxOccurrence };

/// Picks the decision variable among unassigned original variables of P.
/// Ties always go to the lowest id.
struct BranchPolicy {
  BranchHeuristic heuristic = BranchHeuristic::MaxOccurrence;
};

enum class Strategy { Auto, Acyclic, General };

struct CounterOptions {
  BranchPolicy branch;
  bool decompose = true;
  Strategy strategy = Strategy::Auto;
  /// Records the full search tree in CountResult::trace.
  bool record_trace = false;
};

struct CountStats {
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t components = 0;
  std::uint64_t sat_calls = 0;
  std::uint64_t base_cases = 0;
  std::uint64_t conflicts = 0;
  /// Branches cut because the copy side showed no minimal model can follow.
  std::uint64_t copy_prunes = 0;
};

enum class CountPath { Models, Acyclic, General };

const char *to_string(CountPath path);

/// One node of the recorded search tree.
struct TraceNode {
  enum class Kind { Conflict, Leaf, BaseCase, Decision, Product };

  Kind kind = Kind::Leaf;
  BigInt count;
  /// Factor for variables that became free at this node (model counting
  /// only); a Decision or Product node's count is multiplier times the
  /// combination of its children.
  BigInt multiplier = 1;
  std::optional<std::size_t> parent;
  std::vector<std::size_t> children;
  Var branch_var = 0;
  /// Assignment at a base case, after unassigned originals defaulted to false.
  std::optional<Assignment> assignment;
};

struct CountResult {
  BigInt count;
  CountStats stats;
  CountPath path = CountPath::Models;
  bool acyclic = false;
  std::vector<TraceNode> trace;
};

/// Number of minimal models of `formula`. Acyclic formulas are counted as
/// models of F and its forced formula; cyclic ones through the pair search
/// with justification checks.
CountResult count_minimal(const CnfFormula &formula, const CounterOptions &options = {});

/// Exact model count. Free original variables contribute a factor of two,
/// auxiliary variables do not, and copy variables are ignored.
CountResult count_models(const CnfFormula &formula, const CounterOptions &options = {});

/// Minimal-model count of a pair built by build_pair, optionally under a
/// partial assignment already stored in `state.tau`.
CountResult count_pair(const PairState &state, const CounterOptions &options = {});

/// Splits a conditioned pair into variable-disjoint sub-pairs. Variables are
/// linked when they share a clause of P or Q; components come out ordered by
/// their smallest variable id.
std::vector<PairState> decompose(const PairState &state);

/// Leaf check once P has no clauses left: unassigned originals default to
/// false, then every true original must be justified by Q. Returns 0 or 1.
int base_case(const PairState &state, CountStats *stats = nullptr);

std::string to_string(const BigInt &value);

} // namespace mincount
