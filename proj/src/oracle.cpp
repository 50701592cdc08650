#include "mincount/oracle.hpp"

#include "mincount/sat.hpp"

#include <algorithm>
#include <string>

namespace mincount {

OracleLimitExceeded::OracleLimitExceeded(Var num_vars, Var limit)
    : std::runtime_error("brute-force oracle refuses " + std::to_string(num_vars) +
                         " variables; the limit is " + std::to_string(limit)),
      limit_(limit) {}

bool ModelSet::contains(std::uint64_t mask) const {
  return std::find(models.begin(), models.end(), mask) != models.end();
}

std::vector<Var> ModelSet::true_vars(std::size_t i) const {
  std::vector<Var> vars;
  for (Var v = 1; v <= num_vars; ++v)
    if ((models[i] >> (v - 1)) & 1)
      vars.push_back(v);
  return vars;
}

Assignment ModelSet::assignment(std::size_t i) const {
  return Assignment::from_mask(num_vars, models[i]);
}

namespace {

bool satisfies(const CnfFormula &formula, std::uint64_t mask) {
  for (const Clause &c : formula.clauses()) {
    bool sat = false;
    for (Lit l : c) {
      bool value = (mask >> (l.var() - 1)) & 1;
      if (value == l.positive()) {
        sat = true;
        break;
      }
    }
    if (!sat)
      return false;
  }
  return true;
}

} // namespace

ModelSet enumerate_models(const CnfFormula &formula, Var limit) {
  limit = std::min(limit, kMaxOracleLimit);
  if (formula.num_vars() > limit)
    throw OracleLimitExceeded(formula.num_vars(), limit);
  ModelSet out;
  out.num_vars = formula.num_vars();
  const std::uint64_t total = std::uint64_t{1} << formula.num_vars();
  for (std::uint64_t mask = 0; mask < total; ++mask)
    if (satisfies(formula, mask))
      out.models.push_back(mask);
  return out;
}

ModelSet minimal_models_pairwise(const ModelSet &models) {
  ModelSet out;
  out.num_vars = models.num_vars;
  for (std::uint64_t tau : models.models) {
    bool minimal = true;
    for (std::uint64_t sigma : models.models) {
      // sigma < tau pointwise: sigma's true set is a strict subset of tau's.
      if (sigma != tau && (sigma & tau) == sigma) {
        minimal = false;
        break;
      }
    }
    if (minimal)
      out.models.push_back(tau);
  }
  return out;
}

CountResult count_minimal_brute(const CnfFormula &formula, Var limit) {
  ModelSet minimal = minimal_models_pairwise(enumerate_models(formula, limit));
  CountResult result;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    ++result.stats.sat_calls;
    if (!check_minimal(formula, minimal.assignment(i)))
      throw InternalInconsistency(
          "pairwise test keeps a model that the SAT check rejects (mask " +
          std::to_string(minimal.models[i]) + ")");
  }
  result.count = minimal.size();
  return result;
}

} // namespace mincount
