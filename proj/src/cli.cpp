#include "mincount/cli.hpp"

#include "mincount/counter.hpp"
#include "mincount/depgraph.hpp"
#include "mincount/oracle.hpp"
#include "mincount/transform.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>

namespace mincount::cli {

namespace {

void print_stat(std::ostream &out, const std::string &key, const auto &value) {
  out << "c stat " << key << ' ' << value << '\n';
}

void print_count_stats(std::ostream &out, const CountResult &r) {
  print_stat(out, "decisions", r.stats.decisions);
  print_stat(out, "propagations", r.stats.propagations);
  print_stat(out, "components", r.stats.components);
  print_stat(out, "sat_calls", r.stats.sat_calls);
  print_stat(out, "base_cases", r.stats.base_cases);
  print_stat(out, "conflicts", r.stats.conflicts);
  print_stat(out, "copy_prunes", r.stats.copy_prunes);
}

} // namespace

int run(const RunConfig &config, std::istream &in, std::ostream &out, std::ostream &err) {
  CnfFormula formula;
  try {
    if (config.input_path == "-") {
      formula = parse_dimacs(in);
    } else {
      std::ifstream file(config.input_path);
      if (!file) {
        err << "c error: cannot open " << config.input_path << '\n';
        return kUsageError;
      }
      formula = parse_dimacs(file);
    }
  } catch (const ParseError &e) {
    err << "c error: parse error at " << e.what() << '\n';
    return kUsageError;
  }

  const Var limit = std::min(config.oracle_limit, kMaxOracleLimit);
  if ((config.check || config.mode == Mode::Brute) && formula.num_vars() > limit) {
    err << "c error: " << OracleLimitExceeded(formula.num_vars(), limit).what() << '\n';
    return kUsageError;
  }

  DepGraph graph = build_dependency_graph(formula);
  const bool acyclic = is_acyclic(graph);
  if (config.mode == Mode::Acyclic && !acyclic) {
    err << "c error: --mode acyclic needs an acyclic dependency graph\n";
    return kModePrecondition;
  }

  try {
    if (config.emit_depgraph) {
      std::ofstream dot(*config.emit_depgraph);
      if (!dot) {
        err << "c error: cannot write " << *config.emit_depgraph << '\n';
        return kUsageError;
      }
      write_dot(dot, graph);
    }
    if (config.emit_pair)
      write_pair(*config.emit_pair, build_pair(formula));
  } catch (const std::exception &e) {
    err << "c error: " << e.what() << '\n';
    return kUsageError;
  }

  CountResult result;
  if (config.mode == Mode::Brute) {
    result = count_minimal_brute(formula, limit);
  } else {
    CounterOptions options;
    options.strategy = config.mode == Mode::Acyclic   ? Strategy::Acyclic
                       : config.mode == Mode::General ? Strategy::General
                                                      : Strategy::Auto;
    result = count_minimal(formula, options);
  }

  if (config.stats) {
    print_stat(out, "vars", formula.num_vars());
    print_stat(out, "clauses", formula.num_clauses());
    print_stat(out, "tautologies", formula.tautologies_dropped());
    print_stat(out, "acyclic", acyclic ? 1 : 0);
    print_stat(out, "head_cycle_free", is_head_cycle_free(formula, graph) ? 1 : 0);
    print_stat(out, "path",
               config.mode == Mode::Brute ? "brute" : to_string(result.path));
    print_count_stats(out, result);
  }

  int status = kOk;
  if (config.check) {
    BigInt expected = config.mode == Mode::Brute
                          ? result.count
                          : count_minimal_brute(formula, limit).count;
    if (expected != result.count) {
      out << "c check FAIL expected " << expected << " got " << result.count << '\n';
      status = kCheckFailed;
    } else {
      out << "c check OK\n";
    }
  }
  out << "s mc " << result.count << '\n';
  return status;
}

int main(int argc, const char *const *argv, std::istream &in, std::ostream &out,
         std::ostream &err) {
  CLI::App app{"Counts the minimal models of a CNF formula.", "mincount"};
  RunConfig config;
  const std::map<std::string, Mode> modes{{"auto", Mode::Auto},
                                          {"acyclic", Mode::Acyclic},
                                          {"general", Mode::General},
                                          {"brute", Mode::Brute}};
  app.add_option("input", config.input_path, "DIMACS CNF file, or - for stdin")
      ->required();
  app.add_option("--mode", config.mode, "Counting strategy")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  app.add_flag("--check", config.check, "Cross-check against the brute-force oracle");
  app.add_flag("--stats", config.stats, "Print 'c stat' lines before the count");
  app.add_option("--emit-pair", config.emit_pair, "Write P.cnf and Q.cnf into this directory");
  app.add_option("--emit-depgraph", config.emit_depgraph,
                 "Write the dependency graph in DOT format");
  app.add_option("--oracle-limit", config.oracle_limit,
                 "Largest variable count the brute-force oracle accepts")
      ->check(CLI::Range(Var{0}, kMaxOracleLimit));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }
  try {
    return run(config, in, out, err);
  } catch (const std::exception &e) {
    err << "c error: " << e.what() << '\n';
    return kUsageError;
  }
}

} // namespace mincount::cli
