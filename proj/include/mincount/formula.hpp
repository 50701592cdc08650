#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace mincount {

/// Variable identifier. Ids start at 1; 0 is never a valid variable.
using Var = std::uint32_t;

/// A literal packs a variable and a polarity into one word: 2*var + sign.
class Lit {
public:
  constexpr Lit() = default;
  constexpr Lit(Var v, bool positive) : code_(2 * v + (positive ? 0 : 1)) {}

  static constexpr Lit pos(Var v) { return Lit(v, true); }
  static constexpr Lit neg(Var v) { return Lit(v, false); }
  /// Builds a literal from a signed DIMACS integer. `d` must be nonzero.
  static Lit from_dimacs(std::int64_t d);

  constexpr Var var() const { return code_ >> 1; }
  constexpr bool positive() const { return (code_ & 1) == 0; }
  constexpr std::uint32_t code() const { return code_; }
  constexpr Lit operator~() const {
    Lit l;
    l.code_ = code_ ^ 1;
    return l;
  }
  std::int64_t to_dimacs() const {
    return positive() ? static_cast<std::int64_t>(var())
                      : -static_cast<std::int64_t>(var());
  }

  friend constexpr bool operator==(Lit, Lit) = default;
  friend constexpr auto operator<=>(Lit, Lit) = default;

private:
  std::uint32_t code_ = 0;
};

using Clause = std::vector<Lit>;

enum class VarKind { Original, Auxiliary, Copy };

const char *to_string(VarKind kind);
std::optional<VarKind> parse_var_kind(std::string_view text);

/// Inclusive id range [lo, hi] tagged with the role its variables play.
struct VarRange {
  VarKind kind = VarKind::Original;
  Var lo = 1;
  Var hi = 0;

  bool contains(Var v) const { return lo <= v && v <= hi; }
  bool empty() const { return hi < lo; }
  friend bool operator==(const VarRange &, const VarRange &) = default;
};

class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string &what);
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

/// Raised when a caller breaks a documented precondition.
class ContractViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// A CNF clause database. Clauses are normalized on insertion: duplicate
/// literals collapse onto their first occurrence and tautologies are dropped.
/// The formula is immutable once handed out by value; conditioning produces
/// a fresh formula that keeps the variable metadata.
class CnfFormula {
public:
  CnfFormula() = default;
  /// A formula over `num_original_vars` original variables and no clauses.
  explicit CnfFormula(Var num_original_vars);

  Var num_vars() const { return num_vars_; }
  Var num_original_vars() const { return num_original_vars_; }
  const std::vector<VarRange> &var_ranges() const { return ranges_; }
  const std::vector<Clause> &clauses() const { return clauses_; }
  std::size_t num_clauses() const { return clauses_.size(); }
  bool empty() const { return clauses_.empty(); }
  bool has_empty_clause() const;
  std::size_t tautologies_dropped() const { return tautologies_dropped_; }

  VarKind kind_of(Var v) const;
  bool is_original(Var v) const { return kind_of(v) == VarKind::Original; }

  /// Appends a range of `count` fresh ids of the given kind above the
  /// current maximum and returns it.
  VarRange allocate(VarKind kind, Var count);
  /// Declares a range explicitly; used when reading `c vr` annotations.
  void declare_range(VarRange range);

  /// Normalizes and appends a clause. Returns false if it was a tautology.
  bool add_clause(Clause clause);
  bool add_clause(std::initializer_list<std::int64_t> dimacs);

  /// Variables that occur in at least one clause, ascending.
  std::vector<Var> occurring_vars() const;

  /// Same metadata, no clauses.
  CnfFormula skeleton() const;

private:
  friend CnfFormula parse_dimacs(std::istream &in);

  Var num_vars_ = 0;
  Var num_original_vars_ = 0;
  std::vector<VarRange> ranges_;
  std::vector<Clause> clauses_;
  std::size_t tautologies_dropped_ = 0;
};

/// Reads DIMACS CNF. `c vr <kind> <lo> <hi>` comments restore variable ranges.
CnfFormula parse_dimacs(std::istream &in);
CnfFormula parse_dimacs_string(const std::string &text);

/// Writes DIMACS CNF with `c vr` range annotations for non-original ranges.
/// `extra_comments` are emitted verbatim as `c <line>` after the ranges.
void write_dimacs(std::ostream &out, const CnfFormula &formula,
                  const std::vector<std::string> &extra_comments = {});

enum class Value : std::int8_t { Unassigned = 0, False = 1, True = 2 };

enum class Reason : std::uint8_t { Decision, Propagated };

struct TrailEntry {
  Lit lit;
  Reason reason = Reason::Decision;
  friend bool operator==(const TrailEntry &, const TrailEntry &) = default;
};

/// A partial assignment with the order in which literals were set.
class Assignment {
public:
  Assignment() = default;
  explicit Assignment(Var num_vars) : values_(num_vars + 1, Value::Unassigned) {}

  Var num_vars() const {
    return values_.empty() ? 0 : static_cast<Var>(values_.size() - 1);
  }
  Value value(Var v) const {
    return v < values_.size() ? values_[v] : Value::Unassigned;
  }
  Value value(Lit l) const;
  bool is_assigned(Var v) const { return value(v) != Value::Unassigned; }
  bool is_true(Lit l) const { return value(l) == Value::True; }
  bool is_false(Lit l) const { return value(l) == Value::False; }

  /// Makes `l` true. Throws ContractViolation if its variable already holds
  /// a value.
  void assign(Lit l, Reason reason = Reason::Decision);
  /// Assigns every variable in [1, num_vars] from the bits of `mask`
  /// (bit i-1 holds variable i).
  static Assignment from_mask(Var num_vars, std::uint64_t mask);
  /// Assigns `true_vars` true and every other variable in [1, num_vars] false.
  static Assignment from_true_set(Var num_vars, const std::vector<Var> &true_vars);

  const std::vector<TrailEntry> &trail() const { return trail_; }
  std::size_t num_assigned() const { return trail_.size(); }
  /// Grows the value table so that ids up to `num_vars` are addressable.
  void reserve_vars(Var num_vars);

private:
  std::vector<Value> values_;
  std::vector<TrailEntry> trail_;
};

/// A clause left with no satisfiable literal.
struct Conflict {
  Clause clause;
};

using ConditionResult = std::variant<CnfFormula, Conflict>;

/// One conditioning pass: satisfied clauses vanish, false literals are
/// stripped, and an emptied clause is reported as a Conflict.
ConditionResult condition(const CnfFormula &formula, const Assignment &tau);

struct Propagated {
  CnfFormula formula;
  Assignment assignment;
};

using PropagationResult = std::variant<Propagated, Conflict>;

/// Predicate restricting which variables unit propagation may assign.
using AssignFilter = std::function<bool(Var)>;

/// Conditions and then assigns unit literals (reason=Propagated) until no
/// unit clause remains. With a filter, units on variables the filter
/// rejects stay in the residual formula unassigned.
PropagationResult propagate_to_fixpoint(const CnfFormula &formula,
                                        Assignment tau,
                                        const AssignFilter &may_assign = {});

/// True iff every clause has a literal satisfied by `tau`. `tau` must assign
/// every variable occurring in `formula`.
bool evaluate(const CnfFormula &formula, const Assignment &tau);

} // namespace mincount
