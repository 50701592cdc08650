#include "mincount/transform.hpp"

#include <fstream>
#include <string>

namespace mincount {

namespace {

void require_originals_only(const CnfFormula &formula) {
  for (const Clause &c : formula.clauses())
    for (Lit l : c)
      if (!formula.is_original(l.var()))
        throw ContractViolation("transform input must range over original variables");
}

/// Emits the CNF of every forced implication into `out`, drawing auxiliary
/// ids from `next_free_id` upward.
void emit_forced(const ForcedSpec &spec, Var next_free_id, CnfFormula &out) {
  Var next = next_free_id;
  for (Var x = 1; x <= spec.num_vars; ++x) {
    if (spec.must_be_false(x)) {
      out.add_clause({Lit::neg(x)});
      continue;
    }
    Clause implication{Lit::neg(x)};
    bool trivially_true = false;
    for (const Clause &rest : spec.forcing(x)) {
      if (rest.empty()) {
        // The unit clause (x) forces x outright.
        trivially_true = true;
        break;
      }
    }
    if (trivially_true)
      continue;
    for (const Clause &rest : spec.forcing(x)) {
      if (rest.size() == 1) {
        implication.push_back(~rest.front());
        continue;
      }
      Var s = next++;
      Clause back{Lit::pos(s)};
      for (Lit l : rest) {
        out.add_clause({Lit::neg(s), ~l});
        back.push_back(l);
      }
      out.add_clause(std::move(back));
      implication.push_back(Lit::pos(s));
    }
    out.add_clause(std::move(implication));
  }
}

} // namespace

ForcedSpec forced_formula(const CnfFormula &formula) {
  require_originals_only(formula);
  ForcedSpec spec;
  spec.num_vars = formula.num_original_vars();
  spec.co_literals.resize(spec.num_vars + 1);
  for (const Clause &c : formula.clauses()) {
    for (Lit l : c) {
      if (!l.positive())
        continue;
      Clause rest;
      for (Lit other : c)
        if (other != l)
          rest.push_back(other);
      spec.co_literals[l.var()].push_back(std::move(rest));
    }
  }
  return spec;
}

Var tseitin_aux_count(const ForcedSpec &spec) {
  Var count = 0;
  for (Var x = 1; x <= spec.num_vars; ++x) {
    bool trivially_true = false;
    Var wide = 0;
    for (const Clause &rest : spec.forcing(x)) {
      trivially_true = trivially_true || rest.empty();
      wide += rest.size() >= 2 ? 1 : 0;
    }
    if (!trivially_true)
      count += wide;
  }
  return count;
}

CnfFormula tseitin_cnf(const ForcedSpec &spec, Var next_free_id) {
  if (next_free_id <= spec.num_vars)
    throw ContractViolation("auxiliary ids must lie above the original variables");
  CnfFormula out(spec.num_vars);
  out.declare_range(
      {VarKind::Auxiliary, next_free_id, next_free_id + tseitin_aux_count(spec) - 1});
  emit_forced(spec, next_free_id, out);
  return out;
}

CnfFormula copy_formula(const CnfFormula &formula, const CopyVarMap &copy_map) {
  require_originals_only(formula);
  const Var n = formula.num_original_vars();
  if (copy_map.num_originals() != n)
    throw ContractViolation("copy map does not cover the formula's variables");

  CnfFormula out = formula.skeleton();
  bool declared = false;
  for (const VarRange &r : out.var_ranges())
    declared = declared || r == copy_map.range();
  if (!declared)
    out.declare_range(copy_map.range());

  auto copy = [&](Var x) { return copy_map.copy_of(x); };
  std::vector<bool> occurs_positively(n + 1, false);

  for (Var x = 1; x <= n; ++x)
    out.add_clause({Lit::neg(copy(x)), Lit::pos(x)});

  for (const Clause &c : formula.clauses()) {
    Clause implication;
    bool has_positive = false;
    for (Lit l : c) {
      if (l.positive()) {
        has_positive = true;
        occurs_positively[l.var()] = true;
      }
      implication.push_back(Lit(copy(l.var()), l.positive()));
    }
    if (has_positive)
      out.add_clause(std::move(implication));
  }

  for (Var x = 1; x <= n; ++x)
    if (!occurs_positively[x])
      out.add_clause({Lit::neg(x)});
  return out;
}

PairState build_pair(const CnfFormula &formula) {
  require_originals_only(formula);
  const Var n = formula.num_original_vars();
  ForcedSpec spec = forced_formula(formula);

  PairState pair;
  CnfFormula base(n);
  pair.aux_range = base.allocate(VarKind::Auxiliary, tseitin_aux_count(spec));
  VarRange copies = base.allocate(VarKind::Copy, n);
  pair.copy_map = CopyVarMap(n, copies.lo);

  pair.p = base.skeleton();
  for (const Clause &c : formula.clauses())
    pair.p.add_clause(c);
  emit_forced(spec, pair.aux_range.lo, pair.p);

  CnfFormula original_only = base.skeleton();
  for (const Clause &c : formula.clauses())
    original_only.add_clause(c);
  pair.q = copy_formula(original_only, pair.copy_map);

  pair.tau = Assignment(base.num_vars());
  return pair;
}

void write_pair(const std::filesystem::path &dir, const PairState &pair) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> copy_lines;
  for (Var x = 1; x <= pair.copy_map.num_originals(); ++x)
    copy_lines.push_back("copy " + std::to_string(x) + " " +
                         std::to_string(pair.copy_map.copy_of(x)));
  for (const auto &[name, formula] :
       {std::pair{"P.cnf", &pair.p}, std::pair{"Q.cnf", &pair.q}}) {
    std::ofstream out(dir / name);
    if (!out)
      throw std::runtime_error("cannot write " + (dir / name).string());
    write_dimacs(out, *formula, copy_lines);
  }
}

} // namespace mincount
