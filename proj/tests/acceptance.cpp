#include "mincount/counter.hpp"
#include "mincount/depgraph.hpp"
#include "mincount/oracle.hpp"
#include "mincount/sat.hpp"
#include "mincount/transform.hpp"
#include "support/random_cnf.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace mincount;

namespace {

using Clock = std::chrono::steady_clock;

struct Check {
  std::ostringstream failures;
  std::size_t instances = 0;

  void expect(bool ok, const std::string &what) {
    if (!ok && failures.tellp() < 400)
      failures << " [" << what << "]";
  }
  bool ok() const { return failures.str().empty(); }
};

CnfFormula triangle() {
  return parse_dimacs_string("p cnf 3 3\n1 2 0\n2 3 0\n3 1 0\n");
}

CnfFormula cycle() {
  return parse_dimacs_string("p cnf 3 3\n-1 2 0\n-2 3 0\n-3 1 0\n");
}

const gen::RandomCnfShape kSuiteShape{4, 12, 4, 40, 1, 4};
constexpr std::uint64_t kSuiteSize = 1000;
constexpr std::uint64_t kAcyclicSuiteSize = 300;

CounterOptions general(bool decompose, BranchHeuristic h) {
  CounterOptions o;
  o.strategy = Strategy::General;
  o.decompose = decompose;
  o.branch.heuristic = h;
  return o;
}

void triangle_criterion(Check &c) {
  CnfFormula f = triangle();
  c.expect(count_models(f).count == 4, "|Sol(F)| != 4");
  c.expect(count_models(build_pair(f).p).count == 3, "|Sol(P)| != 3");
  c.expect(count_minimal(f).count == 3, "count != 3");
  c.expect(count_minimal_brute(f).count == 3, "oracle != 3");
  c.expect(is_acyclic(build_dependency_graph(f)), "graph not acyclic");
  c.instances = 1;
}

void cycle_criterion(Check &c) {
  CnfFormula f = cycle();
  DepGraph g = build_dependency_graph(f);
  c.expect(g.num_arcs() == 3 && g.has_arc(1, 2) && g.has_arc(2, 3) && g.has_arc(3, 1),
           "graph arcs");
  c.expect(!is_acyclic(g), "graph acyclic");

  ForcedSpec spec = forced_formula(f);
  CnfFormula forced = tseitin_cnf(spec, f.num_vars() + 1);
  std::vector<Clause> expected_forced{{Lit::neg(1), Lit::pos(3)},
                                      {Lit::neg(2), Lit::pos(1)},
                                      {Lit::neg(3), Lit::pos(2)}};
  c.expect(forced.clauses() == expected_forced, "Forced(F)");

  PairState pair = build_pair(f);
  auto copy = [&](Var x) { return pair.copy_map.copy_of(x); };
  std::vector<Clause> expected_copy{
      {Lit::neg(copy(1)), Lit::pos(1)},       {Lit::neg(copy(2)), Lit::pos(2)},
      {Lit::neg(copy(3)), Lit::pos(3)},       {Lit::neg(copy(1)), Lit::pos(copy(2))},
      {Lit::neg(copy(2)), Lit::pos(copy(3))}, {Lit::neg(copy(3)), Lit::pos(copy(1))}};
  c.expect(pair.q.clauses() == expected_copy, "Copy(F)");

  c.expect(count_models(pair.p).count == 2, "|Sol(P)| != 2");
  c.expect(count_minimal(f).count == 1, "count != 1");
  c.expect(count_minimal_brute(f).count == 1, "oracle != 1");

  PairState nothing = build_pair(f);
  PairState everything = build_pair(f);
  for (Var x = 1; x <= 3; ++x) {
    nothing.tau.assign(Lit::neg(x));
    everything.tau.assign(Lit::pos(x));
  }
  CountStats none_stats;
  c.expect(base_case(nothing, &none_stats) == 1, "tau={} rejected");
  c.expect(none_stats.sat_calls == 0, "tau={} needed a solver call");
  c.expect(base_case(everything) == 0, "tau={a,b,c} accepted");

  auto residual = condition(pair.q, everything.tau);
  c.expect(std::holds_alternative<CnfFormula>(residual), "Q|tau conflict");
  if (auto *q = std::get_if<CnfFormula>(&residual)) {
    CnfFormula query = *q;
    query.add_clause({Lit::neg(copy(1)), Lit::neg(copy(2)), Lit::neg(copy(3))});
    c.expect(solve(query).satisfiable(), "justification query unsatisfiable");
  }
  c.instances = 1;
}

void oracle_criterion(Check &c) {
  for (std::uint64_t seed = 0; seed < kSuiteSize; ++seed) {
    CnfFormula f = gen::random_cnf(seed, kSuiteShape);
    BigInt expected = count_minimal_brute(f).count;
    c.expect(count_minimal(f).count == expected, "seed " + std::to_string(seed));
    ++c.instances;
  }
}

void acyclic_criterion(Check &c) {
  for (std::uint64_t seed = 0; seed < kAcyclicSuiteSize; ++seed) {
    CnfFormula f = gen::random_acyclic_cnf(seed, kSuiteShape);
    if (!is_acyclic(build_dependency_graph(f))) {
      c.expect(false, "seed " + std::to_string(seed) + " not acyclic");
      continue;
    }
    BigInt forced_models = count_models(build_pair(f).p).count;
    BigInt expected = count_minimal_brute(f).count;
    c.expect(forced_models == expected, "seed " + std::to_string(seed));
    c.expect(forced_models == gen::count_forced_models_by_definition(f),
             "seed " + std::to_string(seed) + " forced count");
    ++c.instances;
  }
}

void minimality_criterion(Check &c) {
  std::size_t models = 0;
  for (std::uint64_t seed = 0; seed < kSuiteSize; ++seed) {
    CnfFormula f = gen::random_cnf(seed, kSuiteShape);
    ModelSet all = enumerate_models(f);
    ModelSet minimal = minimal_models_pairwise(all);
    for (std::size_t i = 0; i < all.size(); ++i) {
      c.expect(check_minimal(f, all.assignment(i)) == minimal.contains(all.models[i]),
               "seed " + std::to_string(seed) + " model " + std::to_string(i));
      ++models;
    }
  }
  c.instances = models;
}

void neutrality_criterion(Check &c) {
  for (std::uint64_t seed = 0; seed < kSuiteSize; ++seed) {
    CnfFormula f = gen::random_cnf(seed, kSuiteShape);
    const std::string tag = "seed " + std::to_string(seed);
    BigInt reference = count_minimal(f).count;
    CounterOptions no_decompose;
    no_decompose.decompose = false;
    CounterOptions min_id;
    min_id.branch.heuristic = BranchHeuristic::MinId;
    c.expect(count_minimal(f, no_decompose).count == reference, tag + " decompose");
    c.expect(count_minimal(f, min_id).count == reference, tag + " heuristic");
    c.expect(count_minimal(gen::permute_clauses(f, seed + 1)).count == reference,
             tag + " permuted");

    BigInt general_reference =
        count_minimal(f, general(true, BranchHeuristic::MaxOccurrence)).count;
    c.expect(general_reference == reference, tag + " general path");
    c.expect(count_minimal(f, general(false, BranchHeuristic::MaxOccurrence)).count ==
                 general_reference,
             tag + " general decompose");
    c.expect(count_minimal(f, general(true, BranchHeuristic::MinId)).count ==
                 general_reference,
             tag + " general heuristic");
    c.expect(count_minimal(gen::permute_clauses(f, seed + 1),
                           general(true, BranchHeuristic::MaxOccurrence))
                     .count == general_reference,
             tag + " general permuted");
    ++c.instances;
  }
}

void degenerate_criterion(Check &c) {
  for (Strategy s : {Strategy::Auto, Strategy::General}) {
    CounterOptions o;
    o.strategy = s;
    c.expect(count_minimal(CnfFormula(0), o).count == 1, "empty formula");
    c.expect(count_minimal(parse_dimacs_string("p cnf 0 0\n"), o).count == 1,
             "empty header");
    c.expect(count_minimal(parse_dimacs_string("p cnf 3 2\n1 2 0\n0\n"), o).count == 0,
             "empty clause");
    c.expect(count_minimal(parse_dimacs_string("p cnf 2 1\n0\n"), o).count == 0,
             "only empty clause");
    c.expect(count_minimal(CnfFormula(7), o).count == 1, "unused variables only");
    CnfFormula padded = parse_dimacs_string("p cnf 9 3\n1 2 0\n2 3 0\n3 1 0\n");
    c.expect(count_minimal(padded, o).count == 3, "unused variables inflate");
  }
  gen::RandomCnfShape shape = kSuiteShape;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    CnfFormula random = gen::random_cnf(seed, shape);
    CnfFormula f(random.num_vars());
    for (Clause cl : random.clauses()) {
      for (Lit &l : cl)
        l = Lit::neg(l.var());
      f.add_clause(cl);
    }
    BigInt expected = count_minimal_brute(f).count;
    const std::string tag = "negative seed " + std::to_string(seed);
    c.expect(expected == 1, tag + " oracle");
    c.expect(count_minimal(f).count == expected, tag);
    c.expect(count_minimal(f, general(true, BranchHeuristic::MaxOccurrence)).count ==
                 expected,
             tag + " general");
    ++c.instances;
  }
}

struct Criterion {
  int id;
  const char *name;
  double limit_seconds;
  std::function<void(Check &)> run;
};

} // namespace

int main() {
  const Criterion criteria[] = {
      {1, "triangle formula", 1.0, triangle_criterion},
      {2, "implication cycle", 1.0, cycle_criterion},
      {3, "oracle equivalence", 300.0, oracle_criterion},
      {4, "acyclic forced-model counts", 0.0, acyclic_criterion},
      {5, "minimality test agreement", 0.0, minimality_criterion},
      {6, "metamorphic neutrality", 0.0, neutrality_criterion},
      {7, "degenerate inputs", 0.0, degenerate_criterion},
  };
  int failed = 0;
  for (const Criterion &crit : criteria) {
    Check check;
    auto start = Clock::now();
    std::string error;
    try {
      crit.run(check);
    } catch (const std::exception &e) {
      error = e.what();
    }
    double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    bool in_time = crit.limit_seconds == 0.0 || seconds < crit.limit_seconds;
    bool pass = check.ok() && error.empty() && in_time;
    failed += pass ? 0 : 1;
    std::printf("%s criterion %d (%s): %zu checked, %.3fs", pass ? "PASS" : "FAIL", crit.id,
                crit.name, check.instances, seconds);
    if (crit.limit_seconds > 0.0)
      std::printf(" (limit %.0fs)", crit.limit_seconds);
    if (!error.empty())
      std::printf(" exception: %s", error.c_str());
    if (!check.ok())
      std::printf("%s", check.failures.str().c_str());
    std::printf("\n");
  }
  std::printf("%s: %d of %zu criteria failed\n", failed ? "FAIL" : "PASS", failed,
              std::size(criteria));
  return failed ? 1 : 0;
}
