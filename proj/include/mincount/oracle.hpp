#pragma once

#include "mincount/counter.hpp"
#include "mincount/formula.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace mincount {

inline constexpr Var kDefaultOracleLimit = 20;
inline constexpr Var kMaxOracleLimit = 62;

/// Thrown when the oracle is asked to enumerate past its variable cap.
class OracleLimitExceeded : public std::runtime_error {
public:
  OracleLimitExceeded(Var num_vars, Var limit);
  Var limit() const { return limit_; }

private:
  Var limit_;
};

/// Raised when the two independent minimality tests disagree.
class InternalInconsistency : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Total assignments over variables 1..num_vars, each stored as the bit set
/// of its true variables (bit i-1 for variable i), in enumeration order.
struct ModelSet {
  Var num_vars = 0;
  std::vector<std::uint64_t> models;

  std::size_t size() const { return models.size(); }
  bool contains(std::uint64_t mask) const;
  std::vector<Var> true_vars(std::size_t i) const;
  Assignment assignment(std::size_t i) const;
};

/// Every satisfying assignment over 1..num_vars, by binary counting.
ModelSet enumerate_models(const CnfFormula &formula, Var limit = kDefaultOracleLimit);

/// Keeps the models with no strictly smaller model in `models`.
ModelSet minimal_models_pairwise(const ModelSet &models);

/// Minimal-model count by enumeration. Each kept model is re-checked with
/// check_minimal; disagreement raises InternalInconsistency.
CountResult count_minimal_brute(const CnfFormula &formula, Var limit = kDefaultOracleLimit);

} // namespace mincount
