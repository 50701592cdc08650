#include "mincount/formula.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace mincount {

Lit Lit::from_dimacs(std::int64_t d) {
  if (d == 0 || d > std::numeric_limits<Var>::max() / 2 ||
      d < -static_cast<std::int64_t>(std::numeric_limits<Var>::max() / 2))
    throw ContractViolation("literal out of range: " + std::to_string(d));
  return d > 0 ? pos(static_cast<Var>(d)) : neg(static_cast<Var>(-d));
}

const char *to_string(VarKind kind) {
  switch (kind) {
  case VarKind::Original:
    return "orig";
  case VarKind::Auxiliary:
    return "aux";
  case VarKind::Copy:
    return "copy";
  }
  return "?";
}

std::optional<VarKind> parse_var_kind(std::string_view text) {
  if (text == "orig")
    return VarKind::Original;
  if (text == "aux")
    return VarKind::Auxiliary;
  if (text == "copy")
    return VarKind::Copy;
  return std::nullopt;
}

ParseError::ParseError(std::size_t line, const std::string &what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what),
      line_(line) {}

//===----------------------------------------------------------------------===//
// CnfFormula
//===----------------------------------------------------------------------===//

CnfFormula::CnfFormula(Var num_original_vars)
    : num_vars_(num_original_vars), num_original_vars_(num_original_vars) {
  if (num_original_vars > 0)
    ranges_.push_back({VarKind::Original, 1, num_original_vars});
}

bool CnfFormula::has_empty_clause() const {
  return std::any_of(clauses_.begin(), clauses_.end(),
                     [](const Clause &c) { return c.empty(); });
}

VarKind CnfFormula::kind_of(Var v) const {
  for (const VarRange &r : ranges_)
    if (r.contains(v))
      return r.kind;
  throw ContractViolation("variable " + std::to_string(v) +
                          " lies outside every declared range");
}

VarRange CnfFormula::allocate(VarKind kind, Var count) {
  VarRange range{kind, num_vars_ + 1, num_vars_ + count};
  if (count == 0)
    return range;
  declare_range(range);
  return range;
}

void CnfFormula::declare_range(VarRange range) {
  if (range.empty())
    return;
  if (range.lo == 0)
    throw ContractViolation("variable ranges start at 1");
  for (const VarRange &r : ranges_)
    if (range.lo <= r.hi && r.lo <= range.hi)
      throw ContractViolation("overlapping variable ranges");
  ranges_.push_back(range);
  std::sort(ranges_.begin(), ranges_.end(),
            [](const VarRange &a, const VarRange &b) { return a.lo < b.lo; });
  num_vars_ = std::max(num_vars_, range.hi);
  if (range.kind == VarKind::Original)
    num_original_vars_ = std::max(num_original_vars_, range.hi);
}

bool CnfFormula::add_clause(Clause clause) {
  Clause normalized;
  normalized.reserve(clause.size());
  for (Lit l : clause) {
    if (l.var() == 0 || l.var() > num_vars_)
      throw ContractViolation("literal " + std::to_string(l.to_dimacs()) +
                              " exceeds the declared variable count");
    if (std::find(normalized.begin(), normalized.end(), ~l) != normalized.end()) {
      ++tautologies_dropped_;
      return false;
    }
    if (std::find(normalized.begin(), normalized.end(), l) == normalized.end())
      normalized.push_back(l);
  }
  clauses_.push_back(std::move(normalized));
  return true;
}

bool CnfFormula::add_clause(std::initializer_list<std::int64_t> dimacs) {
  Clause clause;
  for (std::int64_t d : dimacs)
    clause.push_back(Lit::from_dimacs(d));
  return add_clause(std::move(clause));
}

std::vector<Var> CnfFormula::occurring_vars() const {
  std::vector<bool> seen(num_vars_ + 1, false);
  for (const Clause &c : clauses_)
    for (Lit l : c)
      seen[l.var()] = true;
  std::vector<Var> vars;
  for (Var v = 1; v <= num_vars_; ++v)
    if (seen[v])
      vars.push_back(v);
  return vars;
}

CnfFormula CnfFormula::skeleton() const {
  CnfFormula copy;
  copy.num_vars_ = num_vars_;
  copy.num_original_vars_ = num_original_vars_;
  copy.ranges_ = ranges_;
  return copy;
}

//===----------------------------------------------------------------------===//
// DIMACS
//===----------------------------------------------------------------------===//

namespace {

bool parse_int(std::string_view token, std::int64_t &out) {
  if (token.empty())
    return false;
  char *end = nullptr;
  std::string buf(token);
  errno = 0;
  long long value = std::strtoll(buf.c_str(), &end, 10);
  if (errno != 0 || end != buf.c_str() + buf.size())
    return false;
  out = value;
  return true;
}

std::vector<std::string> split(const std::string &line) {
  std::istringstream ss(line);
  std::vector<std::string> tokens;
  for (std::string tok; ss >> tok;)
    tokens.push_back(tok);
  return tokens;
}

} // namespace

CnfFormula parse_dimacs(std::istream &in) {
  std::optional<CnfFormula> formula;
  std::vector<std::pair<std::size_t, VarRange>> annotated;
  Clause pending;
  std::size_t pending_line = 0;
  std::size_t line_no = 0;

  for (std::string line; std::getline(in, line);) {
    ++line_no;
    std::vector<std::string> tokens = split(line);
    if (tokens.empty())
      continue;
    if (tokens[0] == "c") {
      if (tokens.size() == 5 && tokens[1] == "vr") {
        auto kind = parse_var_kind(tokens[2]);
        std::int64_t lo = 0, hi = 0;
        if (!kind || !parse_int(tokens[3], lo) || !parse_int(tokens[4], hi) ||
            lo < 1 || hi < lo - 1)
          throw ParseError(line_no, "malformed variable range annotation");
        annotated.push_back(
            {line_no, {*kind, static_cast<Var>(lo), static_cast<Var>(hi)}});
      }
      continue;
    }
    if (tokens[0][0] == 'c')
      continue;
    if (tokens[0] == "%")
      break;
    if (tokens[0] == "p") {
      if (formula)
        throw ParseError(line_no, "duplicate problem header");
      std::int64_t nvars = 0, nclauses = 0;
      if (tokens.size() != 4 || tokens[1] != "cnf" ||
          !parse_int(tokens[2], nvars) || !parse_int(tokens[3], nclauses) ||
          nvars < 0 || nclauses < 0 ||
          nvars > std::numeric_limits<Var>::max() / 2 - 1)
        throw ParseError(line_no, "malformed header, expected 'p cnf <vars> <clauses>'");
      formula.emplace(static_cast<Var>(nvars));
      continue;
    }
    if (!formula)
      throw ParseError(line_no, "clause before problem header");
    for (const std::string &tok : tokens) {
      std::int64_t value = 0;
      if (!parse_int(tok, value))
        throw ParseError(line_no, "invalid literal '" + tok + "'");
      if (pending.empty())
        pending_line = line_no;
      if (value == 0) {
        formula->add_clause(std::move(pending));
        pending.clear();
        continue;
      }
      if (std::llabs(value) > static_cast<std::int64_t>(formula->num_vars()))
        throw ParseError(line_no, "literal " + tok + " exceeds declared variable count " +
                                      std::to_string(formula->num_vars()));
      pending.push_back(Lit::from_dimacs(value));
    }
  }
  if (!formula)
    throw ParseError(line_no, "missing problem header");
  if (!pending.empty())
    throw ParseError(pending_line, "clause is missing its 0 terminator");

  if (annotated.empty())
    return std::move(*formula);

  // Rebuild over the annotated ranges so ids carry their recorded roles.
  CnfFormula result;
  for (const auto &[line, range] : annotated) {
    if (range.hi > formula->num_vars())
      throw ParseError(line, "variable range exceeds declared variable count");
    try {
      result.declare_range(range);
    } catch (const ContractViolation &e) {
      throw ParseError(line, e.what());
    }
  }
  for (const Clause &c : formula->clauses()) {
    for (Lit l : c) {
      bool covered = std::any_of(
          result.var_ranges().begin(), result.var_ranges().end(),
          [&](const VarRange &r) { return r.contains(l.var()); });
      if (!covered)
        throw ParseError(line_no, "variable " + std::to_string(l.var()) +
                                      " is not covered by any range annotation");
    }
    result.add_clause(c);
  }
  result.tautologies_dropped_ += formula->tautologies_dropped();
  return result;
}

CnfFormula parse_dimacs_string(const std::string &text) {
  std::istringstream in(text);
  return parse_dimacs(in);
}

void write_dimacs(std::ostream &out, const CnfFormula &formula,
                  const std::vector<std::string> &extra_comments) {
  for (const VarRange &r : formula.var_ranges())
    out << "c vr " << to_string(r.kind) << ' ' << r.lo << ' ' << r.hi << '\n';
  for (const std::string &comment : extra_comments)
    out << "c " << comment << '\n';
  out << "p cnf " << formula.num_vars() << ' ' << formula.num_clauses() << '\n';
  for (const Clause &c : formula.clauses()) {
    for (Lit l : c)
      out << l.to_dimacs() << ' ';
    out << "0\n";
  }
}

//===----------------------------------------------------------------------===//
// Assignment
//===----------------------------------------------------------------------===//

Value Assignment::value(Lit l) const {
  Value v = value(l.var());
  if (v == Value::Unassigned || l.positive())
    return v;
  return v == Value::True ? Value::False : Value::True;
}

void Assignment::assign(Lit l, Reason reason) {
  if (l.var() == 0)
    throw ContractViolation("variable 0 cannot be assigned");
  reserve_vars(l.var());
  if (values_[l.var()] != Value::Unassigned)
    throw ContractViolation("variable " + std::to_string(l.var()) +
                            " is already assigned");
  values_[l.var()] = l.positive() ? Value::True : Value::False;
  trail_.push_back({l, reason});
}

Assignment Assignment::from_mask(Var num_vars, std::uint64_t mask) {
  Assignment tau(num_vars);
  for (Var v = 1; v <= num_vars; ++v)
    tau.assign(Lit(v, ((mask >> (v - 1)) & 1) != 0));
  return tau;
}

Assignment Assignment::from_true_set(Var num_vars, const std::vector<Var> &true_vars) {
  Assignment tau(num_vars);
  std::vector<bool> on(num_vars + 1, false);
  for (Var v : true_vars) {
    if (v == 0 || v > num_vars)
      throw ContractViolation("variable outside [1, num_vars]");
    on[v] = true;
  }
  for (Var v = 1; v <= num_vars; ++v)
    tau.assign(Lit(v, on[v]));
  return tau;
}

void Assignment::reserve_vars(Var num_vars) {
  if (values_.size() < static_cast<std::size_t>(num_vars) + 1)
    values_.resize(static_cast<std::size_t>(num_vars) + 1, Value::Unassigned);
}

//===----------------------------------------------------------------------===//
// Conditioning and propagation
//===----------------------------------------------------------------------===//

ConditionResult condition(const CnfFormula &formula, const Assignment &tau) {
  CnfFormula reduced = formula.skeleton();
  for (const Clause &c : formula.clauses()) {
    Clause rest;
    bool satisfied = false;
    for (Lit l : c) {
      Value v = tau.value(l);
      if (v == Value::True) {
        satisfied = true;
        break;
      }
      if (v == Value::Unassigned)
        rest.push_back(l);
    }
    if (satisfied)
      continue;
    if (rest.empty())
      return Conflict{c};
    reduced.add_clause(std::move(rest));
  }
  return reduced;
}

PropagationResult propagate_to_fixpoint(const CnfFormula &formula,
                                        Assignment tau,
                                        const AssignFilter &may_assign) {
  CnfFormula current = formula;
  for (;;) {
    ConditionResult step = condition(current, tau);
    if (auto *conflict = std::get_if<Conflict>(&step))
      return *conflict;
    current = std::move(std::get<CnfFormula>(step));

    bool progressed = false;
    for (const Clause &c : current.clauses()) {
      if (c.size() != 1)
        continue;
      Lit unit = c.front();
      if (may_assign && !may_assign(unit.var()))
        continue;
      if (tau.is_assigned(unit.var())) {
        if (tau.is_false(unit))
          return Conflict{c};
        continue;
      }
      tau.assign(unit, Reason::Propagated);
      progressed = true;
    }
    if (!progressed)
      return Propagated{std::move(current), std::move(tau)};
  }
}

bool evaluate(const CnfFormula &formula, const Assignment &tau) {
  bool all_satisfied = true;
  for (const Clause &c : formula.clauses()) {
    bool satisfied = false;
    for (Lit l : c) {
      Value v = tau.value(l);
      if (v == Value::Unassigned)
        throw ContractViolation("evaluate needs a total assignment; variable " +
                                std::to_string(l.var()) + " is unassigned");
      satisfied = satisfied || v == Value::True;
    }
    all_satisfied = all_satisfied && satisfied;
  }
  return all_satisfied;
}

} // namespace mincount
