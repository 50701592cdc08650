#pragma once

#include "mincount/formula.hpp"

#include <filesystem>
#include <vector>

namespace mincount {

/// For every original variable x, the clauses that contain x positively,
/// each stored without x. A variable with no such clause can never be
/// justified and must be false.
struct ForcedSpec {
  Var num_vars = 0;
  std::vector<std::vector<Clause>> co_literals; // indexed by variable, [0] unused

  const std::vector<Clause> &forcing(Var x) const { return co_literals[x]; }
  bool must_be_false(Var x) const { return co_literals[x].empty(); }
};

/// Bijection between original variables 1..n and copy variables
/// base..base+n-1.
class CopyVarMap {
public:
  CopyVarMap() = default;
  CopyVarMap(Var num_originals, Var copy_base)
      : num_originals_(num_originals), copy_base_(copy_base) {}

  Var num_originals() const { return num_originals_; }
  VarRange range() const {
    return {VarKind::Copy, copy_base_, copy_base_ + num_originals_ - 1};
  }
  Var copy_of(Var x) const { return copy_base_ + x - 1; }
  Var original_of(Var c) const { return c - copy_base_ + 1; }
  bool is_copy(Var v) const {
    return num_originals_ > 0 && v >= copy_base_ && v < copy_base_ + num_originals_;
  }

private:
  Var num_originals_ = 0;
  Var copy_base_ = 1;
};

/// The pair counted by the compiler. Both formulas share one id space:
/// originals, then auxiliaries (only in `p`), then copies (only in `q`).
struct PairState {
  CnfFormula p;
  CnfFormula q;
  Assignment tau;
  CopyVarMap copy_map;
  VarRange aux_range{VarKind::Auxiliary, 1, 0};
};

ForcedSpec forced_formula(const CnfFormula &formula);

/// Number of auxiliary variables tseitin_cnf allocates for `spec`.
Var tseitin_aux_count(const ForcedSpec &spec);

/// CNF of the forced implications. Each disjunct that negates two or more
/// literals gets an auxiliary s <-> (conjunction) with ids counted up from
/// `next_free_id`; single-literal disjuncts are inlined.
CnfFormula tseitin_cnf(const ForcedSpec &spec, Var next_free_id);

/// Copy formula over originals and the copy ids of `copy_map`.
CnfFormula copy_formula(const CnfFormula &formula, const CopyVarMap &copy_map);

PairState build_pair(const CnfFormula &formula);

/// Writes `P.cnf` and `Q.cnf` into `dir`, creating it if needed.
void write_pair(const std::filesystem::path &dir, const PairState &pair);

} // namespace mincount
