#pragma once

#include "mincount/formula.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace mincount {

enum class SatStatus { Satisfiable, Unsatisfiable };

struct SatResult {
  SatStatus status = SatStatus::Unsatisfiable;
  /// Total over 1..num_vars of the queried formula when satisfiable.
  Assignment witness;

  bool satisfiable() const { return status == SatStatus::Satisfiable; }
};

struct SolverStats {
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t conflicts = 0;
};

/// Complete DPLL search with two watched literals per clause and
/// chronological backtracking. Branches on the lowest unassigned id, false
/// first, so identical inputs always produce identical witnesses.
class Solver {
public:
  explicit Solver(const CnfFormula &formula);

  SatResult solve(std::span<const Lit> assumptions = {});
  const SolverStats &stats() const { return stats_; }

private:
  enum : std::int8_t { kUndef = 0, kFalse = 1, kTrue = 2 };

  struct Level {
    std::size_t trail_start;
    Lit decision;
    bool flipped;
  };

  std::int8_t value(Lit l) const;
  void enqueue(Lit l);
  /// Returns false on conflict.
  bool propagate();
  void undo_to(std::size_t trail_size);
  Var pick_branch_var() const;
  SatResult make_witness() const;

  Var num_vars_;
  std::vector<Clause> clauses_;
  std::vector<std::vector<std::uint32_t>> watches_; // by literal code
  std::vector<Lit> units_;
  bool trivially_unsat_ = false;

  std::vector<std::int8_t> assigns_;
  std::vector<Lit> trail_;
  std::size_t qhead_ = 0;
  std::vector<Level> levels_;
  SolverStats stats_;
};

SatResult solve(const CnfFormula &formula, std::span<const Lit> assumptions = {});

/// Decides whether the total model `tau` of `formula` is minimal by testing
/// that no model sets a subset of its true variables.
bool check_minimal(const CnfFormula &formula, const Assignment &tau);

} // namespace mincount
