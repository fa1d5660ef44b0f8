#include "omd/exactlp/builders.hpp"

#include <string>

#include "omd/core/error.hpp"

namespace omd::lp {

namespace {

void check_guard(int n, int limit, Guard guard, const char* what) {
  if (!guard.force && n > limit) {
    throw GuardError(std::string(what) + " enumeration guard: n = " + std::to_string(n) +
                     " exceeds " + std::to_string(limit) + " (pass force to override)");
  }
}

}  // namespace

FlowLayout::FlowLayout(int n) : n_(n), index_(subset_count(n) * static_cast<std::size_t>(n), -1) {
  for (Subset::Mask m = 0; m < subset_count(n); ++m) {
    const Subset lower(m);
    for (int i = 0; i < n; ++i) {
      if (lower.contains(i)) continue;
      index_[m * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)] =
          static_cast<int>(lower_.size());
      lower_.push_back(lower);
      item_.push_back(i);
    }
  }
}

int FlowLayout::edge(Subset upper, int item) const {
  if (!upper.contains(item)) throw PreconditionError("edge item not in upper set");
  return index_[upper.without(item).mask() * static_cast<std::size_t>(n_) +
                static_cast<std::size_t>(item)];
}

Problem build_revenue_lp(const OmdInstance& inst, Guard guard) {
  const int n = inst.size();
  check_guard(n, kMaxItemsFullProgram, guard, "revenue LP");
  const RevenueLayout layout{n};
  const std::size_t types = subset_count(n);

  Problem p;
  for (Subset::Mask m = 0; m < types; ++m) p.add_variable("u" + Subset(m).to_string());
  for (Subset::Mask m = 0; m < types; ++m) {
    for (int i = 0; i < n; ++i) {
      p.add_variable("q" + Subset(m).to_string() + "_" + std::to_string(i + 1),
                     Bounds{Rational(0), Rational(1)});
    }
  }

  std::vector<std::vector<Rational>> values(types);
  std::vector<Term> objective;
  for (Subset::Mask m = 0; m < types; ++m) {
    const Subset s(m);
    values[m] = type_vector(inst, s);
    const Rational prob = type_prob(inst, s);
    for (int i = 0; i < n; ++i) objective.push_back(Term{layout.q(s, i), prob * values[m][i]});
    objective.push_back(Term{layout.u(s), -prob});
  }
  p.set_objective(Sense::maximize, std::move(objective));

  // u(S) - u(T) - (v(S) - v(T)) . q(T) >= 0
  for (Subset::Mask sm = 0; sm < types; ++sm) {
    for (Subset::Mask tm = 0; tm < types; ++tm) {
      if (sm == tm) continue;
      const Subset s(sm);
      const Subset t(tm);
      std::vector<Term> row{Term{layout.u(s), Rational(1)}, Term{layout.u(t), Rational(-1)}};
      for (int i = 0; i < n; ++i) {
        Rational diff = values[sm][i] - values[tm][i];
        if (sgn(diff) != 0) row.push_back(Term{layout.q(t, i), -diff});
      }
      p.add_constraint(std::move(row), Relation::greater_equal, Rational(0),
                       "bic" + s.to_string() + t.to_string());
    }
  }
  for (Subset::Mask m = 0; m < types; ++m) {
    p.add_constraint({Term{layout.u(Subset(m)), Rational(1)}}, Relation::greater_equal,
                     Rational(0), "ir" + Subset(m).to_string());
  }
  return p;
}

Problem build_utility_lp(const Lp2Params& params, Guard guard) {
  const int n = params.size();
  check_guard(n, kMaxItemsRelaxedProgram, guard, "utility LP");
  const UtilityLayout layout{n};
  const std::size_t types = subset_count(n);

  Problem p;
  std::vector<Term> objective;
  for (Subset::Mask m = 0; m < types; ++m) {
    const Subset s(m);
    p.add_variable("u" + s.to_string(), Bounds{Rational(0), std::nullopt});
    Rational coef = -params.offset;
    for (int i = 0; i < n; ++i) {
      if (s.contains(i)) coef += params.weight[i];
    }
    coef *= type_prob(params.prob, s);
    if (sgn(coef) != 0) objective.push_back(Term{layout.u(s), coef});
  }
  p.set_objective(Sense::maximize, std::move(objective));

  for (Subset::Mask m = 0; m < types; ++m) {
    const Subset s(m);
    for (int i = 0; i < n; ++i) {
      if (s.contains(i)) continue;
      p.add_constraint({Term{layout.u(s.with(i)), Rational(1)}, Term{layout.u(s), Rational(-1)}},
                       Relation::less_equal, params.increment[i],
                       "adj" + s.to_string() + "+" + std::to_string(i + 1));
    }
  }
  return p;
}

Problem build_flow_lp(const Lp2Params& params, Guard guard) {
  const int n = params.size();
  check_guard(n, kMaxItemsRelaxedProgram, guard, "flow LP");
  const FlowLayout layout(n);
  const std::size_t types = subset_count(n);

  Problem p;
  std::vector<Term> objective;
  for (int e = 0; e < layout.num_edges(); ++e) {
    const Subset lower = layout.edge_lower(e);
    const int item = layout.edge_item(e);
    p.add_variable("f" + lower.with(item).to_string() + "->" + lower.to_string(),
                   Bounds{Rational(0), std::nullopt});
    objective.push_back(Term{e, params.increment[item]});
  }
  p.set_objective(Sense::minimize, std::move(objective));

  for (Subset::Mask m = 0; m < types; ++m) {
    const Subset s(m);
    std::vector<Term> row;
    Rational balance = -params.offset;
    for (int i = 0; i < n; ++i) {
      if (s.contains(i)) {
        row.push_back(Term{layout.edge(s, i), Rational(1)});
        balance += params.weight[i];
      } else {
        row.push_back(Term{layout.edge(s.with(i), i), Rational(-1)});
      }
    }
    balance *= type_prob(params.prob, s);
    p.add_constraint(std::move(row), Relation::greater_equal, std::move(balance),
                     "node" + s.to_string());
  }
  return p;
}

}  // namespace omd::lp
