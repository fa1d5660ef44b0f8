#include "omd/reduction/lexrank.hpp"

#include <string>

#include "omd/core/error.hpp"
#include "omd/core/rational.hpp"
#include "omd/parallel/kernels.hpp"

namespace omd::reduction {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw PreconditionError("gadget value overflows int64");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw PreconditionError("gadget value overflows int64");
  return r;
}

void require_positive(std::span<const std::int64_t> values, const char* what) {
  for (std::int64_t v : values) {
    if (v <= 0) throw PreconditionError(std::string(what) + " entries must be positive");
  }
}

std::int64_t binom64(int n, int k) {
  const Integer b = binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return b.get_si();
}

}  // namespace

std::int64_t lexrank_oracle(std::span<const std::int64_t> values, Subset set, Exec exec) {
  const int n = static_cast<int>(values.size());
  if (n > kMaxLexRankItems) {
    throw GuardError("lexrank enumeration guard: n = " + std::to_string(n) + " exceeds " +
                     std::to_string(kMaxLexRankItems));
  }
  if (!set.is_subset_of(Subset::full(n))) throw PreconditionError("set lies outside {1..n}");
  require_positive(values, "C");
  return kernels::lexrank_count(values, set.mask(), exec);
}

Gadget subsetsum_gadget(std::span<const std::int64_t> weights, std::int64_t target, int level) {
  const int n = static_cast<int>(weights.size());
  if (level < 1 || level > n) {
    throw PreconditionError("gadget level must lie in 1..n, got " + std::to_string(level));
  }
  if (target < 0) throw PreconditionError("target must be nonnegative");
  require_positive(weights, "W");
  const std::int64_t scale = 4 * static_cast<std::int64_t>(n);
  Gadget g;
  g.values.reserve(static_cast<std::size_t>(n + level));
  for (std::int64_t w : weights) g.values.push_back(checked_mul(scale, w));
  g.values.push_back(checked_add(checked_mul(scale, target), 2 * static_cast<std::int64_t>(n)));
  for (int j = 1; j < level; ++j) g.values.push_back(1);
  // total must also fit for the enumeration kernels
  std::int64_t total = 0;
  for (std::int64_t v : g.values) total = checked_add(total, v);
  for (int j = 0; j < level; ++j) g.set = g.set.with(n + j);
  return g;
}

std::int64_t gadget_rank_from_counts(std::span<const std::int64_t> counts, int level) {
  std::int64_t rank = 1;
  for (int m = 1; m <= level; ++m) {
    rank += counts[static_cast<std::size_t>(m)] * binom64(level - 1, level - m);
  }
  return rank;
}

std::vector<std::int64_t> subset_counts_direct(std::span<const std::int64_t> weights,
                                               std::int64_t target, Exec exec) {
  require_positive(weights, "W");
  if (static_cast<int>(weights.size()) > kMaxLexRankItems) {
    throw GuardError("subset-sum enumeration guard exceeded");
  }
  return kernels::bounded_subset_counts(weights, target, exec);
}

std::vector<std::int64_t> subset_counts_via_gadget(std::span<const std::int64_t> weights,
                                                   std::int64_t target) {
  const int n = static_cast<int>(weights.size());
  if (n > kMaxGadgetItems) {
    throw GuardError("gadget inversion guard: n = " + std::to_string(n) + " exceeds " +
                     std::to_string(kMaxGadgetItems));
  }
  std::vector<std::int64_t> counts(static_cast<std::size_t>(n) + 1, 0);
  counts[0] = target >= 0 ? 1 : 0;
  if (target < 0) return counts;
  for (int level = 1; level <= n; ++level) {
    const Gadget g = subsetsum_gadget(weights, target, level);
    // the coefficient of counts[level] is binom(level-1, 0) = 1
    const std::int64_t rank = lexrank_oracle(g.values, g.set);
    counts[static_cast<std::size_t>(level)] = rank - gadget_rank_from_counts(counts, level);
  }
  return counts;
}

std::int64_t count_subsetsum_direct(std::span<const std::int64_t> weights, std::int64_t target) {
  std::int64_t total = 0;
  for (std::int64_t c : subset_counts_direct(weights, target)) total += c;
  return total;
}

std::int64_t count_subsetsum_via_gadget(std::span<const std::int64_t> weights,
                                        std::int64_t target) {
  std::int64_t total = 0;
  for (std::int64_t c : subset_counts_via_gadget(weights, target)) total += c;
  return total;
}

std::int64_t count_subsetsum(std::span<const std::int64_t> weights, std::int64_t target) {
  const std::int64_t direct = count_subsetsum_direct(weights, target);
  const std::int64_t staged = count_subsetsum_via_gadget(weights, target);
  if (direct != staged) {
    throw InvariantError("subset-sum counts disagree: direct " + std::to_string(direct) +
                         ", gadget " + std::to_string(staged));
  }
  return direct;
}

}  // namespace omd::reduction
