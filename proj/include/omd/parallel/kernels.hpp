#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "omd/core/instance.hpp"
#include "omd/parallel/exec.hpp"

// Data-parallel enumeration kernels over the 2^n type space.
namespace omd::kernels {

/// p(S) for every mask S.
std::vector<Rational> type_prob_table(std::span<const Rational> prob, Exec exec = Exec::parallel);

/// p(S) (sum_{i in S} weight_i - offset) for every mask S.
std::vector<Rational> balance_table(const Lp2Params& params, Exec exec = Exec::parallel);

/// Number of same-size subsets of `values` that sum strictly below `set`,
/// plus equal-sum subsets that are lexicographically <= `set`.
std::int64_t lexrank_count(std::span<const std::int64_t> values, std::uint64_t set_mask,
                           Exec exec = Exec::parallel);

/// counts[m] = number of size-m subsets with sum <= target, m = 0..n.
std::vector<std::int64_t> bounded_subset_counts(std::span<const std::int64_t> values,
                                                std::int64_t target,
                                                Exec exec = Exec::parallel);

}  // namespace omd::kernels
