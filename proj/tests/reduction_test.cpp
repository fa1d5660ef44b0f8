#include <gtest/gtest.h>

#include <algorithm>

#include "omd/core/error.hpp"
#include "omd/lattice/flow.hpp"
#include "omd/reduction/construction.hpp"
#include "omd/reduction/lexrank.hpp"
#include "support/fixtures.hpp"

using namespace omd;
using namespace omd::reduction;
using namespace omd::testing;

namespace {

using Values = std::vector<std::int64_t>;

std::int64_t sum_over(const Values& c, Subset s) {
  std::int64_t t = 0;
  for (int i = 0; i < static_cast<int>(c.size()); ++i) {
    if (s.contains(i)) t += c[static_cast<std::size_t>(i)];
  }
  return t;
}

// Rank by sorting every same-size subset on (sum, largest differing item).
std::int64_t rank_by_sorting(const Values& c, Subset s) {
  std::vector<Subset> peers;
  for (Subset::Mask m = 0; m < subset_count(static_cast<int>(c.size())); ++m) {
    if (Subset(m).size() == s.size()) peers.emplace_back(m);
  }
  std::sort(peers.begin(), peers.end(), [&](Subset a, Subset b) {
    if (sum_over(c, a) != sum_over(c, b)) return sum_over(c, a) < sum_over(c, b);
    const Subset diff = a ^ b;
    return !diff.empty() && b.contains(diff.max_item());
  });
  return std::find(peers.begin(), peers.end(), s) - peers.begin() + 1;
}

// count of size-m subsets with sum <= T, by recursion over items
std::int64_t count_recursive(const Values& w, std::size_t from, std::int64_t budget, int m) {
  if (budget < 0) return 0;
  if (m == 0) return 1;
  if (from == w.size()) return 0;
  return count_recursive(w, from + 1, budget - w[from], m - 1) +
         count_recursive(w, from + 1, budget, m);
}

// f(p) for n = 2, |S| = 1 simplified by hand
Rational f_two_one(const Rational& p) { return p * (2 * p - 1) / ((1 - p) * (3 - 2 * p)); }

}  // namespace

TEST(LexLeq, Examples) {
  EXPECT_TRUE(lex_leq(set_of({1}, 3), set_of({2}, 3)));
  EXPECT_FALSE(lex_leq(set_of({2}, 3), set_of({1}, 3)));
  EXPECT_TRUE(lex_leq(set_of({1, 3}, 3), set_of({2, 3}, 3)));
  EXPECT_TRUE(lex_leq(set_of({2}, 3), set_of({2}, 3)));
}

TEST(LexLeq, IsMaskOrder) {
  for (Subset::Mask a = 0; a < 64; ++a) {
    for (Subset::Mask b = 0; b < 64; ++b) {
      ASSERT_EQ(lex_leq(Subset(a), Subset(b)), a <= b);
    }
  }
}

TEST(LexRank, Examples) {
  EXPECT_EQ(lexrank_oracle(Values{1, 2, 3}, set_of({1, 2}, 3)), 1);
  EXPECT_EQ(lexrank_oracle(Values{1, 2, 3}, set_of({2, 3}, 3)), 3);
  EXPECT_EQ(lexrank_oracle(Values{8, 16, 20}, set_of({3}, 3)), 3);
}

TEST(LexRank, MatchesSortingWithTies) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::int64_t> pick(1, 4);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 7;
    Values c;
    for (int i = 0; i < n; ++i) c.push_back(pick(rng));
    for (Subset::Mask m = 0; m < subset_count(n); ++m) {
      ASSERT_EQ(lexrank_oracle(c, Subset(m)), rank_by_sorting(c, Subset(m)));
      ASSERT_EQ(lexrank_oracle(c, Subset(m), Exec::serial), lexrank_oracle(c, Subset(m)));
    }
  }
}

TEST(LexRank, Guard) {
  EXPECT_THROW(lexrank_oracle(Values(23, 1), Subset()), GuardError);
  EXPECT_THROW(lexrank_oracle(Values{1, 0}, Subset()), PreconditionError);
}

TEST(Gadget, Examples) {
  Gadget g = subsetsum_gadget(Values{1, 2}, 2, 1);
  EXPECT_EQ(g.values, (Values{8, 16, 20}));
  EXPECT_EQ(g.set, set_of({3}, 3));
  EXPECT_EQ(sum_over(g.values, g.set), 20);
  g = subsetsum_gadget(Values{1, 2}, 2, 2);
  EXPECT_EQ(g.values, (Values{8, 16, 20, 1}));
  EXPECT_EQ(g.set, set_of({3, 4}, 4));
  EXPECT_EQ(sum_over(g.values, g.set), 21);
  EXPECT_EQ(lexrank_oracle(g.values, g.set), 3);
  const Values counts{1, count_recursive({1, 2}, 0, 2, 1), count_recursive({1, 2}, 0, 2, 2)};
  EXPECT_EQ(gadget_rank_from_counts(counts, 2), 3);
  EXPECT_THROW(subsetsum_gadget(Values{1, 2}, 2, 3), PreconditionError);
  EXPECT_THROW(subsetsum_gadget(Values{1, 2}, 2, 0), PreconditionError);
  EXPECT_THROW(subsetsum_gadget(Values{1, 2}, std::int64_t{1} << 61, 1), PreconditionError);
}

TEST(Gadget, SumIdentityAndOrderingFacts) {
  const Values w{3, 1, 2};
  const int n = 3;
  for (std::int64_t t = 0; t <= 7; ++t) {
    for (int level = 1; level <= n; ++level) {
      const Gadget g = subsetsum_gadget(w, t, level);
      const std::int64_t target = sum_over(g.values, g.set);
      ASSERT_EQ(target, 4 * n * t + 2 * n + level - 1);
      Subset pad;
      for (int j = n + 1; j < n + level; ++j) pad = pad.with(j);
      for (Subset::Mask m = 1; m < subset_count(n); ++m) {
        const Subset s(m);
        for (Subset::Mask u = 0; u < subset_count(n + level); ++u) {
          const Subset extra = Subset(u) & pad;
          if (Subset(u) != extra) continue;
          if (sum_over(w, s) > t) ASSERT_GT(sum_over(g.values, s), target);
          if (sum_over(w, s) <= t) ASSERT_LT(sum_over(g.values, s | extra), target);
          ASSERT_GT(sum_over(g.values, s | extra | Subset::singleton(n)), target);
        }
      }
    }
  }
}

TEST(CountSubsetSum, Examples) {
  EXPECT_EQ(count_subsetsum(Values{1, 2}, 2), 3);
  EXPECT_EQ(count_subsetsum(Values{1, 1, 1}, 0), 1);
  EXPECT_EQ(count_subsetsum(Values{3, 5}, 10), 4);
}

TEST(CountSubsetSum, StagedInversionMatchesRecursion) {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<std::int64_t> pick(1, 9);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 6;
    Values w;
    std::int64_t total = 0;
    for (int i = 0; i < n; ++i) {
      w.push_back(pick(rng));
      total += w.back();
    }
    std::uniform_int_distribution<std::int64_t> target(0, total);
    const std::int64_t t = target(rng);
    const Values staged = subset_counts_via_gadget(w, t);
    for (int m = 0; m <= n; ++m) {
      ASSERT_EQ(staged[static_cast<std::size_t>(m)], count_recursive(w, 0, t, m));
    }
    ASSERT_EQ(subset_counts_direct(w, t, Exec::serial), staged);
    ASSERT_EQ(count_subsetsum_direct(w, t), count_subsetsum_via_gadget(w, t));
  }
}

TEST(CountSubsetSum, Guard) {
  EXPECT_THROW(subset_counts_via_gadget(Values(11, 1), 3), GuardError);
}

TEST(EvalF, Examples) {
  EXPECT_EQ(eval_f(2, 1, Q("1/2")), 0);
  EXPECT_EQ(eval_f(2, 1, Q("5/6")), Q("5/2"));
  EXPECT_GE(eval_f(2, 1, Q("5/6")), 2);
  EXPECT_LT(eval_f(2, 1, Q("1/4")), 0);
  for (const char* p : {"1/3", "3/5", "7/9", "99/100"}) EXPECT_EQ(eval_f(2, 1, Q(p)), f_two_one(Q(p)));
  EXPECT_THROW(eval_f(2, 1, Q("0")), PreconditionError);
  EXPECT_THROW(eval_f(2, 1, Q("1")), PreconditionError);
}

TEST(FindParameter, Examples) {
  const Rational one = find_parameter(2, 1, 1);
  EXPECT_GT(eval_f(2, 1, one), Q("5/6"));
  EXPECT_LT(eval_f(2, 1, one), 1);
  // crossing of f = 11/12 is the root of 2p^2 + 43p - 33
  EXPECT_NEAR(one.get_d(), (-43 + std::sqrt(43.0 * 43 + 8 * 33)) / 4, 1e-6);
  EXPECT_TRUE(is_dyadic(one));
  const Rational two = find_parameter(2, 1, 2);
  EXPECT_GT(eval_f(2, 1, two), Q("11/6"));
  EXPECT_LT(eval_f(2, 1, two), 2);
  for (const Rational& p : {one, two}) {
    EXPECT_GE(p, Q("1/2"));
    EXPECT_LT(p, Q("5/6"));
  }
  EXPECT_THROW(find_parameter(2, 1, 3), PreconditionError);
  EXPECT_THROW(find_parameter(2, 0, 1), PreconditionError);
}

TEST(FindParameter, WindowAndPrecisionUpToSixItems) {
  for (int n = 2; n <= 6; ++n) {
    for (int s = 1; s <= n - 1; ++s) {
      const std::int64_t top = binomial(n, s).get_si();
      for (std::int64_t k = 1; k <= top; ++k) {
        const Rational p = find_parameter(n, s, k);
        const Rational f = eval_f(n, s, p);
        ASSERT_GT(f, Rational(k) - Rational(1, 2 * n + 2));
        ASSERT_LT(f, Rational(k));
        ASSERT_TRUE(is_dyadic(p));
        ASSERT_GE(p, Q("1/2"));
        ASSERT_LT(p, 1 - Rational(1, 2 * n + 2));
      }
    }
  }
}

TEST(Construction, ExampleYes) {
  const ReductionOutput out = lexrank_to_omd(Values{1, 2}, set_of({1}, 2), 1);
  EXPECT_EQ(out.params.increment, Qs({"34", "44", "1"}));
  EXPECT_EQ(out.params.weight, Qs({"2", "2", "2"}));
  EXPECT_EQ(out.params.offset, 5);
  EXPECT_EQ(out.probe_type, set_of({2}, 3));
  EXPECT_EQ(out.target_t_star, set_of({2}, 3));
  EXPECT_EQ(out.distinguished_item, 2);
  EXPECT_EQ(lattice::node_cost(out.params.increment, out.probe_type, 3), 35);
  EXPECT_EQ(lattice::node_cost(out.params.increment, out.target_t_star, 3), 35);
  EXPECT_TRUE(audit_cost_structure(out).ok());
  const Decision d = decide(out);
  EXPECT_EQ(d.probe, 1);
  EXPECT_TRUE(d.yes);
  ASSERT_TRUE(d.has_partially_filled);
  EXPECT_EQ(d.partially_filled, out.target_t_star);
  // the constructed instance maps back onto the same relaxed parameters
  EXPECT_EQ(to_lp2_params(out.instance, out.params.scale()), out.params);
}

TEST(Construction, ExampleNo) {
  const ReductionOutput out = lexrank_to_omd(Values{1, 2}, set_of({2}, 2), 1);
  EXPECT_EQ(out.probe_type, set_of({1}, 3));
  EXPECT_EQ(lattice::node_cost(out.params.increment, out.probe_type, 3), 45);
  EXPECT_EQ(decide(out).probe, 0);
  EXPECT_FALSE(decide_lexrank(Values{1, 2}, set_of({2}, 2), 1));
  EXPECT_TRUE(decide_lexrank(Values{1, 2}, set_of({1}, 2), 1));
  EXPECT_TRUE(decide_lexrank(Values{1, 2, 3}, set_of({2, 3}, 3), 3));
}

TEST(Construction, Errors) {
  EXPECT_THROW(lexrank_to_omd(Values{1, 2}, Subset(), 1), PreconditionError);
  EXPECT_THROW(lexrank_to_omd(Values{1, 2}, Subset::full(2), 1), PreconditionError);
  EXPECT_THROW(lexrank_to_omd(Values{1, 2}, set_of({1}, 2), 3), PreconditionError);
  EXPECT_THROW(lexrank_to_omd(Values{1, 2}, set_of({1}, 2), 1, Q("5/6")), PreconditionError);
}

TEST(Construction, SmallSweepMatchesOracle) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int64_t> pick(1, 6);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 2 + trial % 3;
    Values c;
    for (int i = 0; i < n; ++i) c.push_back(pick(rng));
    for (Subset::Mask m = 1; m + 1 < subset_count(n); ++m) {
      const Subset s(m);
      const std::int64_t rank = lexrank_oracle(c, s);
      for (std::int64_t k = 1; k <= binomial(n, s.size()).get_si(); ++k) {
        const ReductionOutput out = lexrank_to_omd(c, s, k);
        ASSERT_TRUE(audit_cost_structure(out).ok());
        const Decision d = decide(out);
        ASSERT_EQ(d.yes, rank <= k);
        ASSERT_TRUE(d.has_partially_filled);
        ASSERT_EQ(d.partially_filled, out.target_t_star);
        ASSERT_EQ(d.partially_filled.size(), n - s.size());
        ASSERT_EQ(lexrank_oracle(c, Subset::full(n) - out.target_t_star), k);
      }
    }
  }
}
