#include "mincount/formula.hpp"

#include "support/random_cnf.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace mincount;

namespace {

// Variables a, b, c are 1, 2, 3 throughout.
constexpr Var a = 1, b = 2, c = 3;

CnfFormula triangle() {
  return parse_dimacs_string("p cnf 3 3\n1 2 0\n2 3 0\n3 1 0\n");
}

CnfFormula cycle() {
  return parse_dimacs_string("p cnf 3 3\n-1 2 0\n-2 3 0\n-3 1 0\n");
}

Assignment assign(Var n, std::initializer_list<std::int64_t> lits) {
  Assignment tau(n);
  for (auto d : lits)
    tau.assign(Lit::from_dimacs(d));
  return tau;
}

} // namespace

//===----------------------------------------------------------------------===//
// Literals
//===----------------------------------------------------------------------===//

TEST(LitTest, NegationIsAnInvolution) {
  for (std::int64_t d : {1, -1, 7, -42}) {
    Lit l = Lit::from_dimacs(d);
    EXPECT_EQ(~~l, l);
    EXPECT_NE(~l, l);
    EXPECT_EQ((~l).var(), l.var());
    EXPECT_EQ(l.to_dimacs(), d);
  }
  EXPECT_THROW(Lit::from_dimacs(0), ContractViolation);
}

//===----------------------------------------------------------------------===//
// parse_dimacs
//===----------------------------------------------------------------------===//

TEST(ParseDimacsTest, Triangle) {
  CnfFormula f = triangle();
  EXPECT_EQ(f.num_vars(), 3u);
  EXPECT_EQ(f.num_original_vars(), 3u);
  ASSERT_EQ(f.num_clauses(), 3u);
  EXPECT_EQ(f.clauses()[0], (Clause{Lit::pos(a), Lit::pos(b)}));
  EXPECT_EQ(f.clauses()[1], (Clause{Lit::pos(b), Lit::pos(c)}));
  EXPECT_EQ(f.clauses()[2], (Clause{Lit::pos(c), Lit::pos(a)}));
  EXPECT_EQ(f.occurring_vars(), (std::vector<Var>{1, 2, 3}));
}

TEST(ParseDimacsTest, EmptyFormula) {
  CnfFormula f = parse_dimacs_string("p cnf 0 0\n");
  EXPECT_EQ(f.num_vars(), 0u);
  EXPECT_TRUE(f.empty());
}

TEST(ParseDimacsTest, TautologyIsDroppedAndCounted) {
  CnfFormula f = parse_dimacs_string("p cnf 2 1\n1 -1 0\n");
  EXPECT_TRUE(f.empty());
  EXPECT_EQ(f.tautologies_dropped(), 1u);
}

TEST(ParseDimacsTest, DuplicatesKeepFirstOccurrence) {
  CnfFormula f = parse_dimacs_string("c hello\np cnf 3 1\n3 1 3 2 1 0\n");
  ASSERT_EQ(f.num_clauses(), 1u);
  EXPECT_EQ(f.clauses()[0], (Clause{Lit::pos(3), Lit::pos(1), Lit::pos(2)}));
}

TEST(ParseDimacsTest, ClauseMaySpanLinesAndEmptyClauseIsKept) {
  CnfFormula f = parse_dimacs_string("p cnf 2 2\n1\n-2 0 0\n");
  ASSERT_EQ(f.num_clauses(), 2u);
  EXPECT_EQ(f.clauses()[0].size(), 2u);
  EXPECT_TRUE(f.clauses()[1].empty());
  EXPECT_TRUE(f.has_empty_clause());
}

TEST(ParseDimacsTest, ErrorsNameTheLine) {
  auto line_of = [](const std::string &text) -> std::size_t {
    try {
      parse_dimacs_string(text);
    } catch (const ParseError &e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("c x\np cnf three 1\n1 0\n"), 2u);
  EXPECT_EQ(line_of("p cnf 2 1\n1 3 0\n"), 2u);
  EXPECT_EQ(line_of("p cnf 2 2\n1 0\n2 -1\n"), 3u);
  EXPECT_EQ(line_of("1 2 0\n"), 1u);
  EXPECT_EQ(line_of("p cnf 2 1\n1 x 0\n"), 2u);
  EXPECT_THROW(parse_dimacs_string(""), ParseError);
  EXPECT_THROW(parse_dimacs_string("p dnf 2 1\n"), ParseError);
}

TEST(ParseDimacsTest, RangeAnnotationsRoundTrip) {
  CnfFormula f(2);
  VarRange aux = f.allocate(VarKind::Auxiliary, 1);
  VarRange copy = f.allocate(VarKind::Copy, 2);
  f.add_clause({1, -3});
  f.add_clause({-4, 1});
  f.add_clause({5, 2, 3});

  std::ostringstream out;
  write_dimacs(out, f, {"note"});
  CnfFormula g = parse_dimacs_string(out.str());
  EXPECT_EQ(g.var_ranges(), f.var_ranges());
  EXPECT_EQ(g.clauses(), f.clauses());
  EXPECT_EQ(g.num_original_vars(), 2u);
  EXPECT_EQ(g.kind_of(aux.lo), VarKind::Auxiliary);
  EXPECT_EQ(g.kind_of(copy.hi), VarKind::Copy);
}

TEST(ParseDimacsTest, AnnotationsMustCoverEveryLiteral) {
  EXPECT_THROW(parse_dimacs_string("c vr orig 1 1\np cnf 2 1\n1 2 0\n"), ParseError);
  EXPECT_THROW(parse_dimacs_string("c vr orig 1 3\np cnf 2 1\n1 2 0\n"), ParseError);
  EXPECT_THROW(parse_dimacs_string("c vr bogus 1 2\np cnf 2 1\n1 2 0\n"), ParseError);
}

//===----------------------------------------------------------------------===//
// condition / propagate / evaluate
//===----------------------------------------------------------------------===//

TEST(ConditionTest, UnitAppearsAfterConditioning) {
  CnfFormula f = parse_dimacs_string("p cnf 3 2\n-1 2 0\n-2 3 0\n");
  ConditionResult r = condition(f, assign(3, {1}));
  ASSERT_TRUE(std::holds_alternative<CnfFormula>(r));
  const CnfFormula &g = std::get<CnfFormula>(r);
  ASSERT_EQ(g.num_clauses(), 2u);
  EXPECT_EQ(g.clauses()[0], (Clause{Lit::pos(b)}));
  EXPECT_EQ(g.clauses()[1], (Clause{Lit::neg(b), Lit::pos(c)}));
}

TEST(ConditionTest, SatisfiedClauseVanishes) {
  CnfFormula f = parse_dimacs_string("p cnf 2 1\n1 2 0\n");
  ConditionResult r = condition(f, assign(2, {1}));
  ASSERT_TRUE(std::holds_alternative<CnfFormula>(r));
  EXPECT_TRUE(std::get<CnfFormula>(r).empty());
}

TEST(ConditionTest, FalsifiedClauseIsConflict) {
  CnfFormula f = parse_dimacs_string("p cnf 2 1\n1 2 0\n");
  ConditionResult r = condition(f, assign(2, {-1, -2}));
  ASSERT_TRUE(std::holds_alternative<Conflict>(r));
  EXPECT_EQ(std::get<Conflict>(r).clause, (Clause{Lit::pos(a), Lit::pos(b)}));
}

TEST(PropagateTest, CycleChainsForward) {
  PropagationResult r = propagate_to_fixpoint(cycle(), assign(3, {1}));
  ASSERT_TRUE(std::holds_alternative<Propagated>(r));
  const auto &[g, tau] = std::get<Propagated>(r);
  EXPECT_TRUE(g.empty());
  EXPECT_EQ(tau.value(b), Value::True);
  EXPECT_EQ(tau.value(c), Value::True);
  ASSERT_EQ(tau.trail().size(), 3u);
  EXPECT_EQ(tau.trail()[0].reason, Reason::Decision);
  EXPECT_EQ(tau.trail()[1].reason, Reason::Propagated);
  EXPECT_TRUE(evaluate(cycle(), tau));
}

TEST(PropagateTest, CycleChainsBackward) {
  PropagationResult r = propagate_to_fixpoint(cycle(), assign(3, {-1}));
  ASSERT_TRUE(std::holds_alternative<Propagated>(r));
  const auto &[g, tau] = std::get<Propagated>(r);
  EXPECT_TRUE(g.empty());
  EXPECT_EQ(tau.value(b), Value::False);
  EXPECT_EQ(tau.value(c), Value::False);
  EXPECT_TRUE(evaluate(cycle(), tau));
}

TEST(PropagateTest, NoUnitNoChange) {
  CnfFormula f = parse_dimacs_string("p cnf 2 1\n1 2 0\n");
  PropagationResult r = propagate_to_fixpoint(f, Assignment(2));
  ASSERT_TRUE(std::holds_alternative<Propagated>(r));
  EXPECT_EQ(std::get<Propagated>(r).formula.clauses(), f.clauses());
  EXPECT_EQ(std::get<Propagated>(r).assignment.num_assigned(), 0u);
}

TEST(PropagateTest, ComplementaryUnitsConflict) {
  CnfFormula f = parse_dimacs_string("p cnf 2 3\n1 0\n-1 2 0\n-2 0\n");
  EXPECT_TRUE(std::holds_alternative<Conflict>(propagate_to_fixpoint(f, Assignment(2))));
}

TEST(PropagateTest, FilterLeavesRejectedUnitsInPlace) {
  CnfFormula f = parse_dimacs_string("p cnf 3 2\n1 0\n-1 2 0\n");
  auto only_two = [](Var v) { return v == 2; };
  PropagationResult r = propagate_to_fixpoint(f, Assignment(3), only_two);
  ASSERT_TRUE(std::holds_alternative<Propagated>(r));
  EXPECT_EQ(std::get<Propagated>(r).assignment.num_assigned(), 0u);
  EXPECT_EQ(std::get<Propagated>(r).formula.num_clauses(), 2u);
}

TEST(EvaluateTest, Triangle) {
  EXPECT_TRUE(evaluate(triangle(), Assignment::from_true_set(3, {a, b})));
  EXPECT_FALSE(evaluate(triangle(), Assignment::from_true_set(3, {a})));
  EXPECT_TRUE(evaluate(CnfFormula(0), Assignment(0)));
  EXPECT_THROW(evaluate(triangle(), assign(3, {1})), ContractViolation);
}

TEST(AssignmentTest, RejectsDoubleAssignment) {
  Assignment tau(2);
  tau.assign(Lit::pos(1));
  EXPECT_THROW(tau.assign(Lit::neg(1)), ContractViolation);
  EXPECT_EQ(tau.num_assigned(), 1u);
}

//===----------------------------------------------------------------------===//
// Properties over random formulas
//===----------------------------------------------------------------------===//

namespace {

Assignment random_partial(Var n, std::mt19937_64 &rng) {
  Assignment tau(n);
  for (Var v = 1; v <= n; ++v) {
    int roll = static_cast<int>(rng() % 3);
    if (roll != 2)
      tau.assign(Lit(v, roll == 1));
  }
  return tau;
}

} // namespace

TEST(FormulaPropertyTest, ConditioningIsIdempotentAndPreservesModels) {
  std::mt19937_64 rng(7);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    CnfFormula f = gen::random_cnf(seed, {3, 8, 2, 12, 1, 4});
    Assignment tau = random_partial(f.num_vars(), rng);
    ConditionResult once = condition(f, tau);
    if (auto *g = std::get_if<CnfFormula>(&once)) {
      ConditionResult twice = condition(*g, tau);
      ASSERT_TRUE(std::holds_alternative<CnfFormula>(twice));
      EXPECT_EQ(std::get<CnfFormula>(twice).clauses(), g->clauses());
    }
    // Every total extension agrees on F and on the conditioned formula.
    for (std::uint64_t mask = 0; mask < (1u << f.num_vars()); ++mask) {
      Assignment sigma = Assignment::from_mask(f.num_vars(), mask);
      bool extends = true;
      for (Var v = 1; v <= f.num_vars(); ++v)
        if (tau.is_assigned(v) && tau.value(v) != sigma.value(v))
          extends = false;
      if (!extends)
        continue;
      bool full = evaluate(f, sigma);
      if (std::holds_alternative<Conflict>(once))
        EXPECT_FALSE(full);
      else
        EXPECT_EQ(full, evaluate(std::get<CnfFormula>(once), sigma));
    }
  }
}

TEST(FormulaPropertyTest, TotalAssignmentsDecideEveryClause) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    CnfFormula f = gen::random_cnf(seed, {3, 7, 1, 10, 1, 3});
    for (std::uint64_t mask = 0; mask < (1u << f.num_vars()); ++mask) {
      Assignment sigma = Assignment::from_mask(f.num_vars(), mask);
      ConditionResult r = condition(f, sigma);
      if (evaluate(f, sigma)) {
        ASSERT_TRUE(std::holds_alternative<CnfFormula>(r));
        EXPECT_TRUE(std::get<CnfFormula>(r).empty());
      } else {
        EXPECT_TRUE(std::holds_alternative<Conflict>(r));
      }
    }
  }
}

TEST(FormulaPropertyTest, PropagationAssignsEachVariableOnce) {
  std::mt19937_64 rng(11);
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    CnfFormula f = gen::random_cnf(seed, {3, 10, 2, 20, 1, 3});
    Assignment tau = random_partial(f.num_vars(), rng);
    PropagationResult r = propagate_to_fixpoint(f, tau);
    if (std::holds_alternative<Conflict>(r))
      continue;
    const auto &[g, out] = std::get<Propagated>(r);
    EXPECT_LE(out.trail().size(), f.num_vars());
    std::vector<int> seen(f.num_vars() + 1, 0);
    for (const TrailEntry &e : out.trail())
      EXPECT_EQ(++seen[e.lit.var()], 1);
    for (const Clause &cl : g.clauses())
      EXPECT_GE(cl.size(), 2u);
  }
}
