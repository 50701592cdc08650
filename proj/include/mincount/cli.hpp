#pragma once

#include "mincount/formula.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace mincount::cli {

enum class Mode { Auto, Acyclic, General, Brute };

enum ExitCode : int {
  kOk = 0,
  kUsageError = 1,
  kCheckFailed = 2,
  kModePrecondition = 3,
};

struct RunConfig {
  std::string input_path = "-";
  Mode mode = Mode::Auto;
  bool check = false;
  bool stats = false;
  std::optional<std::string> emit_pair;
  std::optional<std::string> emit_depgraph;
  Var oracle_limit = 20;
};

/// Runs one invocation. The count goes to `out` as the final `s mc <n>`
/// line; diagnostics go to `err`. `in` backs the `-` input path.
int run(const RunConfig &config, std::istream &in, std::ostream &out, std::ostream &err);

/// Parses argv and runs. Returns the process exit status.
int main(int argc, const char *const *argv, std::istream &in, std::ostream &out,
         std::ostream &err);

} // namespace mincount::cli
