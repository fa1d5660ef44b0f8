#pragma once

#include <cstdint>
#include <span>

#include "omd/core/instance.hpp"
#include "omd/reduction/lexrank.hpp"

namespace omd::reduction {

/// Remaining flow when the size-(n-s) pairs start filling, in units of one
/// pair's capacity.
Rational eval_f(int n, int s, const Rational& p);

/// Bisects f - (k - 1/(4n+4)) on [1/2, 1 - 1/(2n+2)] and returns a dyadic p
/// with f(p) strictly inside (k - 1/(2n+2), k).
Rational find_parameter(int n, int s, std::int64_t k);

/// Explicit safe bound on |f'| over the bisection bracket.
Integer derivative_bound(int n);

struct ReductionOutput {
  OmdInstance instance;  // n + 1 items
  Lp2Params params;
  Subset probe_type;           // [n] minus S
  int distinguished_item = 0;  // 0-based, equals n
  Rational p_tilde;
  Subset target_t_star;
};

ReductionOutput lexrank_to_omd(std::span<const std::int64_t> values, Subset set, std::int64_t k);
/// Same construction with a precomputed find_parameter(n, |S|, k).
ReductionOutput lexrank_to_omd(std::span<const std::int64_t> values, Subset set, std::int64_t k,
                               const Rational& p_tilde);

struct CostStructure {
  bool distinct_costs = false;
  bool full_set_cheapest = false;
  bool no_cost_between_pairs = false;
  bool larger_sets_cheaper = false;

  [[nodiscard]] bool ok() const {
    return distinct_costs && full_set_cheapest && no_cost_between_pairs && larger_sets_cheaper;
  }
};

/// Checks the ordering facts the construction relies on, over all negative
/// nodes of the (n+1)-item lattice.
CostStructure audit_cost_structure(const ReductionOutput& out);

struct Decision {
  bool yes = false;
  Rational probe;  // q_{n+1}(S^c)
  Subset partially_filled;
  bool has_partially_filled = false;
};

/// Solves the constructed instance and reads the distinguished item's
/// allocation at the probe type. Throws InvariantError unless it is 0 or 1.
Decision decide(const ReductionOutput& out);

bool decide_lexrank(std::span<const std::int64_t> values, Subset set, std::int64_t k);

}  // namespace omd::reduction
