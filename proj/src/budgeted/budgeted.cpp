#include "omd/budgeted/budgeted.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "omd/core/error.hpp"
#include "omd/exactlp/lp.hpp"

namespace omd::budgeted {

BudgetedInstance BudgetedInstance::create(std::vector<std::int64_t> values, std::int64_t budget,
                                          Rational eps) {
  if (values.empty() || static_cast<int>(values.size()) > Subset::kMaxItems) {
    throw PreconditionError("x must have between 1 and 63 entries");
  }
  Integer total = 0;
  for (std::int64_t v : values) {
    if (v <= 0) throw PreconditionError("x entries must be positive");
    total += Integer(static_cast<long>(v));
  }
  if (!total.fits_slong_p()) throw PreconditionError("sum of x overflows");
  if (budget <= 0) throw PreconditionError("budget must be positive");
  if (sgn(eps) <= 0 || eps >= Rational(Integer(1), total + 1)) {
    throw PreconditionError("eps must lie in (0, 1/(1 + sum x)), got " + format_rational(eps));
  }
  return BudgetedInstance{std::move(values), budget, std::move(eps)};
}

std::int64_t BudgetedInstance::total() const {
  std::int64_t s = 0;
  for (std::int64_t v : values) s += v;
  return s;
}

std::int64_t additive_value(std::span<const std::int64_t> values, Subset s) {
  std::int64_t total = 0;
  for (int i = 0; i < static_cast<int>(values.size()); ++i) {
    if (s.contains(i)) total += values[static_cast<std::size_t>(i)];
  }
  return total;
}

std::int64_t budgeted_value(std::span<const std::int64_t> values, std::int64_t budget, Subset s) {
  return std::min(additive_value(values, s), budget);
}

Bundle best_affordable_bundle(std::span<const std::int64_t> values, std::int64_t budget) {
  if (static_cast<int>(values.size()) > Subset::kMaxItems) {
    throw PreconditionError("too many items for a subset witness");
  }
  std::int64_t total = 0;
  for (std::int64_t v : values) {
    if (v <= 0) throw PreconditionError("x entries must be positive");
    total += v;
  }
  if (budget < 0) throw PreconditionError("budget must be nonnegative");
  const std::int64_t cap = std::min(budget, total);
  if (cap >= kMaxTableSums) {
    throw GuardError("sum table of " + std::to_string(cap) + " entries exceeds the guard");
  }

  // best[s]: smallest mask with sum exactly s. Items are added in increasing
  // index order, so a new bit always dominates the older ones in mask order.
  constexpr Subset::Mask kNone = std::numeric_limits<Subset::Mask>::max();
  std::vector<Subset::Mask> best(static_cast<std::size_t>(cap) + 1, kNone);
  best[0] = 0;
  for (int i = 0; i < static_cast<int>(values.size()); ++i) {
    const std::int64_t w = values[static_cast<std::size_t>(i)];
    const Subset::Mask bit = Subset::Mask{1} << i;
    for (std::int64_t s = cap; s >= w; --s) {
      const Subset::Mask from = best[static_cast<std::size_t>(s - w)];
      if (from == kNone || (from & bit) != 0) continue;
      best[static_cast<std::size_t>(s)] = std::min(best[static_cast<std::size_t>(s)], from | bit);
    }
  }
  for (std::int64_t s = cap;; --s) {
    if (best[static_cast<std::size_t>(s)] != kNone) {
      return Bundle{s, Subset(best[static_cast<std::size_t>(s)])};
    }
  }
}

BudgetedMechanism optimal_budgeted_mechanism(const BudgetedInstance& inst) {
  const Bundle bundle = best_affordable_bundle(inst.values, inst.budget);
  const Rational total(static_cast<long>(inst.total()));
  const Rational affordable(static_cast<long>(bundle.value));
  BudgetedMechanism mech{MenuEntry{Subset::full(inst.size()), total},
                         MenuEntry{bundle.witness, affordable}, Rational(0)};
  mech.revenue = (1 - inst.eps) * total + inst.eps * affordable;
  return mech;
}

int count_violations(const BudgetedInstance& inst, const BudgetedMechanism& mech) {
  auto additive = [&](const MenuEntry& e) -> Rational {
    return Rational(static_cast<long>(additive_value(inst.values, e.allocation))) - e.price;
  };
  auto capped = [&](const MenuEntry& e) -> Rational {
    return Rational(static_cast<long>(budgeted_value(inst.values, inst.budget, e.allocation))) -
           e.price;
  };
  int violations = 0;
  if (sgn(additive(mech.unbudgeted)) < 0) ++violations;
  if (sgn(capped(mech.budgeted)) < 0) ++violations;
  if (additive(mech.unbudgeted) < additive(mech.budgeted)) ++violations;
  if (capped(mech.budgeted) < capped(mech.unbudgeted)) ++violations;
  return violations;
}

Rational budgeted_oracle_lp(const BudgetedInstance& inst, bool force) {
  const int n = inst.size();
  if (n > kMaxOracleItems && !force) {
    throw GuardError("budgeted oracle guard: n = " + std::to_string(n) + " exceeds " +
                     std::to_string(kMaxOracleItems));
  }
  const std::size_t bundles = subset_count(n);
  lp::Problem problem;
  // type 0 unbudgeted, type 1 budgeted
  std::vector<int> dist[2];
  int price[2];
  for (int t = 0; t < 2; ++t) {
    for (Subset::Mask m = 0; m < bundles; ++m) {
      dist[t].push_back(problem.add_variable(
          (t == 0 ? "a" : "b") + Subset(m).to_string(), lp::Bounds{Rational(0), std::nullopt}));
    }
    price[t] = problem.add_variable(t == 0 ? "price_a" : "price_b", lp::Bounds{});
  }
  auto value = [&](int t, Subset s) {
    return Rational(static_cast<long>(t == 0 ? additive_value(inst.values, s)
                                             : budgeted_value(inst.values, inst.budget, s)));
  };
  // utility of type t reporting r, as terms
  auto utility = [&](int t, int r) {
    std::vector<lp::Term> terms;
    for (Subset::Mask m = 0; m < bundles; ++m) {
      const Rational v = value(t, Subset(m));
      if (sgn(v) != 0) terms.push_back(lp::Term{dist[r][m], v});
    }
    terms.push_back(lp::Term{price[r], Rational(-1)});
    return terms;
  };
  for (int t = 0; t < 2; ++t) {
    std::vector<lp::Term> sum;
    for (int v : dist[t]) sum.push_back(lp::Term{v, Rational(1)});
    problem.add_constraint(sum, lp::Relation::equal, Rational(1), t == 0 ? "dist_a" : "dist_b");
    problem.add_constraint(utility(t, t), lp::Relation::greater_equal, Rational(0),
                           t == 0 ? "ir_a" : "ir_b");
    std::vector<lp::Term> bic = utility(t, t);
    for (lp::Term term : utility(t, 1 - t)) {
      term.coef = -term.coef;
      bic.push_back(term);
    }
    problem.add_constraint(bic, lp::Relation::greater_equal, Rational(0),
                           t == 0 ? "bic_a" : "bic_b");
  }
  problem.set_objective(lp::Sense::maximize,
                        {lp::Term{price[0], 1 - inst.eps}, lp::Term{price[1], inst.eps}});
  const lp::Solution sol = lp::solve(problem);
  if (sol.status != lp::Status::optimal) {
    throw InvariantError(std::string("budgeted oracle LP is ") + lp::to_string(sol.status));
  }
  return sol.value;
}

}  // namespace omd::budgeted
