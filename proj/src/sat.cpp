#include "mincount/sat.hpp"

#include <string>

namespace mincount {

Solver::Solver(const CnfFormula &formula)
    : num_vars_(formula.num_vars()), watches_(2 * (formula.num_vars() + 1)),
      assigns_(formula.num_vars() + 1, kUndef) {
  for (const Clause &c : formula.clauses()) {
    if (c.empty()) {
      trivially_unsat_ = true;
      continue;
    }
    if (c.size() == 1) {
      units_.push_back(c.front());
      continue;
    }
    auto idx = static_cast<std::uint32_t>(clauses_.size());
    clauses_.push_back(c);
    watches_[c[0].code()].push_back(idx);
    watches_[c[1].code()].push_back(idx);
  }
}

std::int8_t Solver::value(Lit l) const {
  std::int8_t v = assigns_[l.var()];
  if (v == kUndef || l.positive())
    return v;
  return v == kTrue ? kFalse : kTrue;
}

void Solver::enqueue(Lit l) {
  assigns_[l.var()] = l.positive() ? kTrue : kFalse;
  trail_.push_back(l);
}

bool Solver::propagate() {
  while (qhead_ < trail_.size()) {
    Lit falsified = ~trail_[qhead_++];
    auto &watchers = watches_[falsified.code()];
    std::size_t keep = 0;
    for (std::size_t i = 0; i < watchers.size(); ++i) {
      std::uint32_t idx = watchers[i];
      Clause &c = clauses_[idx];
      if (c[0] == falsified)
        std::swap(c[0], c[1]);
      // c[1] is the falsified watch.
      if (value(c[0]) == kTrue) {
        watchers[keep++] = idx;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k) {
        if (value(c[k]) != kFalse) {
          std::swap(c[1], c[k]);
          watches_[c[1].code()].push_back(idx);
          moved = true;
          break;
        }
      }
      if (moved)
        continue;
      watchers[keep++] = idx;
      if (value(c[0]) == kFalse) {
        for (++i; i < watchers.size(); ++i)
          watchers[keep++] = watchers[i];
        watchers.resize(keep);
        ++stats_.conflicts;
        return false;
      }
      ++stats_.propagations;
      enqueue(c[0]);
    }
    watchers.resize(keep);
  }
  return true;
}

void Solver::undo_to(std::size_t trail_size) {
  while (trail_.size() > trail_size) {
    assigns_[trail_.back().var()] = kUndef;
    trail_.pop_back();
  }
  qhead_ = trail_size;
}

Var Solver::pick_branch_var() const {
  for (Var v = 1; v <= num_vars_; ++v)
    if (assigns_[v] == kUndef)
      return v;
  return 0;
}

SatResult Solver::make_witness() const {
  SatResult result;
  result.status = SatStatus::Satisfiable;
  result.witness = Assignment(num_vars_);
  for (Var v = 1; v <= num_vars_; ++v)
    result.witness.assign(Lit(v, assigns_[v] == kTrue),
                          assigns_[v] == kUndef ? Reason::Decision : Reason::Propagated);
  return result;
}

SatResult Solver::solve(std::span<const Lit> assumptions) {
  for (std::size_t i = 0; i < assumptions.size(); ++i) {
    if (assumptions[i].var() == 0 || assumptions[i].var() > num_vars_)
      throw ContractViolation("assumption on an undeclared variable");
    for (std::size_t j = i + 1; j < assumptions.size(); ++j)
      if (assumptions[i] == ~assumptions[j])
        throw ContractViolation("inconsistent assumptions on variable " +
                                std::to_string(assumptions[i].var()));
  }

  undo_to(0);
  levels_.clear();
  if (trivially_unsat_)
    return {};

  auto assert_root = [&](Lit l) {
    std::int8_t v = value(l);
    if (v == kFalse)
      return false;
    if (v == kUndef)
      enqueue(l);
    return true;
  };
  for (Lit l : units_)
    if (!assert_root(l))
      return {};
  for (Lit l : assumptions)
    if (!assert_root(l))
      return {};

  for (;;) {
    if (!propagate()) {
      while (!levels_.empty() && levels_.back().flipped)
        levels_.pop_back();
      if (levels_.empty()) {
        undo_to(0);
        return {};
      }
      Level &level = levels_.back();
      undo_to(level.trail_start);
      level.flipped = true;
      enqueue(~level.decision);
      continue;
    }
    Var v = pick_branch_var();
    if (v == 0) {
      SatResult result = make_witness();
      undo_to(0);
      return result;
    }
    ++stats_.decisions;
    Lit decision = Lit::neg(v);
    levels_.push_back({trail_.size(), decision, false});
    enqueue(decision);
  }
}

SatResult solve(const CnfFormula &formula, std::span<const Lit> assumptions) {
  Solver solver(formula);
  return solver.solve(assumptions);
}

bool check_minimal(const CnfFormula &formula, const Assignment &tau) {
  for (Var v = 1; v <= formula.num_vars(); ++v)
    if (!tau.is_assigned(v))
      throw ContractViolation("check_minimal needs a total assignment; variable " +
                              std::to_string(v) + " is unassigned");
  if (!evaluate(formula, tau))
    throw ContractViolation("check_minimal called on a non-model");

  CnfFormula query = formula;
  Clause shrink;
  for (Var v = 1; v <= formula.num_vars(); ++v) {
    if (tau.value(v) == Value::True)
      shrink.push_back(Lit::neg(v));
    else
      query.add_clause({Lit::neg(v)});
  }
  if (shrink.empty())
    return true;
  query.add_clause(std::move(shrink));
  return !solve(query).satisfiable();
}

} // namespace mincount
