#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "omd/core/rational.hpp"
#include "omd/core/subset.hpp"

namespace omd::budgeted {

inline constexpr int kMaxOracleItems = 10;
inline constexpr std::int64_t kMaxTableSums = std::int64_t{1} << 26;

/// Deterministic additive values; with probability eps the bidder also has a
/// hard budget and values a set at min(sum, budget).
struct BudgetedInstance {
  std::vector<std::int64_t> values;
  std::int64_t budget = 0;
  Rational eps;

  /// Validates positive values and budget, and 0 < eps < 1/(1 + sum values).
  static BudgetedInstance create(std::vector<std::int64_t> values, std::int64_t budget,
                                 Rational eps);
  [[nodiscard]] int size() const { return static_cast<int>(values.size()); }
  [[nodiscard]] std::int64_t total() const;
};

struct Bundle {
  std::int64_t value = 0;
  Subset witness;  // smallest mask among maximizers
};

/// Largest subset sum not exceeding `budget`, by dynamic programming over
/// reachable sums up to min(budget, total).
Bundle best_affordable_bundle(std::span<const std::int64_t> values, std::int64_t budget);

struct MenuEntry {
  Subset allocation;
  Rational price;
};

struct BudgetedMechanism {
  MenuEntry unbudgeted;
  MenuEntry budgeted;
  Rational revenue;
};

/// Everything at the total for the unbudgeted type; the best affordable
/// bundle at its value for the budgeted type.
BudgetedMechanism optimal_budgeted_mechanism(const BudgetedInstance& inst);

/// Value of a set to the budgeted and unbudgeted types.
std::int64_t additive_value(std::span<const std::int64_t> values, Subset s);
std::int64_t budgeted_value(std::span<const std::int64_t> values, std::int64_t budget, Subset s);

/// Number of violated constraints among the two IR and two BIC rows.
int count_violations(const BudgetedInstance& inst, const BudgetedMechanism& mech);

/// Optimal revenue over randomized two-type direct mechanisms: one
/// distribution over all 2^n bundles per type plus a price per type.
Rational budgeted_oracle_lp(const BudgetedInstance& inst, bool force = false);

}  // namespace omd::budgeted
