#include "omd/parallel/kernels.hpp"

#include <omp.h>

#include <bit>


namespace omd {

int max_threads() { return omp_get_max_threads(); }

namespace kernels {

namespace {

std::int64_t masked_sum(std::span<const std::int64_t> values, std::uint64_t mask) {
  std::int64_t s = 0;
  for (; mask != 0; mask &= mask - 1) s += values[static_cast<std::size_t>(std::countr_zero(mask))];
  return s;
}

// Largest element of the symmetric difference belongs to b.
bool lex_leq_mask(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t diff = a ^ b;
  if (diff == 0) return true;
  return (b >> (63 - std::countl_zero(diff))) & 1U;
}

}  // namespace

std::vector<Rational> type_prob_table(std::span<const Rational> prob, Exec exec) {
  const int n = static_cast<int>(prob.size());
  const auto count = static_cast<std::int64_t>(subset_count(n));
  std::vector<Rational> table(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (std::int64_t m = 0; m < count; ++m) {
    table[static_cast<std::size_t>(m)] = type_prob(prob, Subset(static_cast<std::uint64_t>(m)));
  }
  return table;
}

std::vector<Rational> balance_table(const Lp2Params& params, Exec exec) {
  const int n = params.size();
  const auto count = static_cast<std::int64_t>(subset_count(n));
  std::vector<Rational> table(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (std::int64_t m = 0; m < count; ++m) {
    const Subset s(static_cast<std::uint64_t>(m));
    Rational excess = -params.offset;
    for (int i = 0; i < n; ++i) {
      if (s.contains(i)) excess += params.weight[i];
    }
    table[static_cast<std::size_t>(m)] = type_prob(params.prob, s) * excess;
  }
  return table;
}

std::int64_t lexrank_count(std::span<const std::int64_t> values, std::uint64_t set_mask,
                           Exec exec) {
  const auto count = static_cast<std::int64_t>(subset_count(static_cast<int>(values.size())));
  const int size = std::popcount(set_mask);
  const std::int64_t target = masked_sum(values, set_mask);
  std::int64_t rank = 0;
#pragma omp parallel for schedule(static) reduction(+ : rank) if (exec == Exec::parallel)
  for (std::int64_t m = 0; m < count; ++m) {
    const auto other = static_cast<std::uint64_t>(m);
    if (std::popcount(other) != size) continue;
    const std::int64_t sum = masked_sum(values, other);
    if (sum < target || (sum == target && lex_leq_mask(other, set_mask))) ++rank;
  }
  return rank;
}

std::vector<std::int64_t> bounded_subset_counts(std::span<const std::int64_t> values,
                                                std::int64_t target, Exec exec) {
  const int n = static_cast<int>(values.size());
  const auto count = static_cast<std::int64_t>(subset_count(n));
  std::vector<std::int64_t> counts(static_cast<std::size_t>(n) + 1, 0);
  std::int64_t* out = counts.data();
#pragma omp parallel for schedule(static) reduction(+ : out[:n + 1]) if (exec == Exec::parallel)
  for (std::int64_t m = 0; m < count; ++m) {
    const auto mask = static_cast<std::uint64_t>(m);
    if (masked_sum(values, mask) <= target) ++out[std::popcount(mask)];
  }
  return counts;
}

}  // namespace kernels
}  // namespace omd
