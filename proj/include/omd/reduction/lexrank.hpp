#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "omd/core/subset.hpp"
#include "omd/parallel/exec.hpp"

namespace omd::reduction {

using omd::lex_leq;

inline constexpr int kMaxLexRankItems = 22;
inline constexpr int kMaxGadgetItems = 10;

struct LexRankInstance {
  std::vector<std::int64_t> values;  // c_1..c_n, positive
  Subset set;
  std::int64_t k = 1;
};

struct SubsetSumInstance {
  std::vector<std::int64_t> weights;  // positive
  std::int64_t target = 0;
};

/// Rank of `set` among subsets of the same size, ordered by sum and then by
/// lex_leq. Always at least 1.
std::int64_t lexrank_oracle(std::span<const std::int64_t> values, Subset set,
                            Exec exec = Exec::parallel);

struct Gadget {
  std::vector<std::int64_t> values;  // n + level entries
  Subset set;                        // {n+1, ..., n+level}
};

/// Stage `level` of the counting gadget: 4n w_i on the original items,
/// 4nT + 2n on item n+1, and level-1 unit items after it.
Gadget subsetsum_gadget(std::span<const std::int64_t> weights, std::int64_t target, int level);

/// 1 + sum_{m=1}^{level} counts[m] * binom(level-1, level-m); counts is
/// indexed by subset size.
std::int64_t gadget_rank_from_counts(std::span<const std::int64_t> counts, int level);

/// counts[m] = number of size-m subsets with sum <= target, m = 0..n.
std::vector<std::int64_t> subset_counts_direct(std::span<const std::int64_t> weights,
                                               std::int64_t target,
                                               Exec exec = Exec::parallel);

/// Same table recovered stage by stage from gadget ranks; counts[0] is 1.
std::vector<std::int64_t> subset_counts_via_gadget(std::span<const std::int64_t> weights,
                                                   std::int64_t target);

/// Number of subsets (the empty set included) with sum <= target.
std::int64_t count_subsetsum_direct(std::span<const std::int64_t> weights, std::int64_t target);
std::int64_t count_subsetsum_via_gadget(std::span<const std::int64_t> weights,
                                        std::int64_t target);
/// Runs both and throws InvariantError if they disagree.
std::int64_t count_subsetsum(std::span<const std::int64_t> weights, std::int64_t target);

}  // namespace omd::reduction
