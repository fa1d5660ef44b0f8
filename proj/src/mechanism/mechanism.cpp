#include "omd/mechanism/mechanism.hpp"

#include <algorithm>
#include <string>

#include "omd/core/error.hpp"
#include "omd/parallel/kernels.hpp"

namespace omd::mechanism {

namespace {

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  Rational s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::incentive:
      return "incentive";
    case ViolationKind::participation:
      return "participation";
    case ViolationKind::probability:
      return "probability";
    case ViolationKind::price:
      return "price";
  }
  return "?";
}

Mechanism from_utility_allocation(const OmdInstance& inst, std::vector<Rational> utility,
                                  std::vector<Rational> allocation, bool unique) {
  const int n = inst.size();
  const std::size_t types = subset_count(n);
  if (utility.size() != types || allocation.size() != types * static_cast<std::size_t>(n)) {
    throw PreconditionError("mechanism tables do not cover all 2^n types");
  }
  Mechanism mech{n, std::move(utility), std::move(allocation), std::vector<Rational>(types),
                 unique};
  for (Subset::Mask m = 0; m < types; ++m) {
    const Subset s(m);
    mech.price[m] = dot(type_vector(inst, s), mech.q(s)) - mech.utility[m];
  }
  return mech;
}

Mechanism closed_form_mechanism(const Lp2Params& params, const lattice::FlowSolution& flow) {
  const RecoveredInstance recovered = from_lp2_params(params);
  const int n = params.size();
  const std::size_t types = subset_count(n);

  std::vector<Rational> utility(types);
  if (const auto boundary = flow.boundary_node()) {
    const Rational top = lattice::node_cost(params.increment, *boundary, n);
    for (Subset::Mask m = 0; m < types; ++m) {
      const Rational gap = top - lattice::node_cost(params.increment, Subset(m), n);
      if (sgn(gap) > 0) utility[m] = gap;
    }
  }

  std::vector<Rational> allocation(types * static_cast<std::size_t>(n));
  for (Subset::Mask m = 0; m < types; ++m) {
    const Subset s(m);
    for (int i = 0; i < n; ++i) {
      Rational& q = allocation[m * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)];
      if (s.contains(i)) {
        q = 1;
      } else {
        q = (utility[s.with(i).mask()] - utility[m]) / params.increment[i];
      }
    }
  }
  return from_utility_allocation(recovered.instance, std::move(utility), std::move(allocation),
                                 flow.partially_filled.has_value());
}

VerificationReport verify_bic_ir(const OmdInstance& inst, const Mechanism& mech, Exec exec) {
  const int n = inst.size();
  if (mech.n != n) throw PreconditionError("mechanism and instance item counts differ");
  if (n > kMaxVerifyItems) {
    throw GuardError("pairwise verification guard: n = " + std::to_string(n) + " exceeds " +
                     std::to_string(kMaxVerifyItems));
  }
  const auto types = static_cast<std::int64_t>(subset_count(n));
  std::vector<std::vector<Rational>> values(static_cast<std::size_t>(types));
  for (std::int64_t m = 0; m < types; ++m) {
    values[static_cast<std::size_t>(m)] = type_vector(inst, Subset(static_cast<Subset::Mask>(m)));
  }

  std::vector<std::vector<Violation>> per_type(static_cast<std::size_t>(types));
#pragma omp parallel for schedule(dynamic, 1) if (exec == Exec::parallel)
  for (std::int64_t sm = 0; sm < types; ++sm) {
    const Subset s(static_cast<Subset::Mask>(sm));
    const auto& vs = values[static_cast<std::size_t>(sm)];
    auto& out = per_type[static_cast<std::size_t>(sm)];
    Rational slack;
    for (std::int64_t tm = 0; tm < types; ++tm) {
      if (tm == sm) continue;
      const Subset t(static_cast<Subset::Mask>(tm));
      const auto& vt = values[static_cast<std::size_t>(tm)];
      slack = mech.u(s) - mech.u(t);
      for (int i = 0; i < n; ++i) slack -= (vs[i] - vt[i]) * mech.q(t, i);
      if (sgn(slack) < 0) out.push_back(Violation{ViolationKind::incentive, s, t, -1, slack});
    }
    if (sgn(mech.u(s)) < 0) {
      out.push_back(Violation{ViolationKind::participation, s, s, -1, mech.u(s)});
    }
    for (int i = 0; i < n; ++i) {
      const Rational& q = mech.q(s, i);
      if (sgn(q) < 0) out.push_back(Violation{ViolationKind::probability, s, s, i, q});
      if (q > 1) out.push_back(Violation{ViolationKind::probability, s, s, i, Rational(1 - q)});
    }
    slack = mech.tau(s) - (dot(vs, mech.q(s)) - mech.u(s));
    if (sgn(slack) != 0) out.push_back(Violation{ViolationKind::price, s, s, -1, slack});
  }

  VerificationReport report;
  const auto t = static_cast<std::size_t>(types);
  report.incentive_checked = t * (t - 1);
  report.participation_checked = t;
  report.probability_checked = t * static_cast<std::size_t>(n);
  report.price_checked = t;
  for (auto& chunk : per_type) {
    std::move(chunk.begin(), chunk.end(), std::back_inserter(report.violations));
  }
  return report;
}

bool is_monotone_supermodular(std::span<const Rational> utility, int n) {
  const std::size_t types = subset_count(n);
  if (utility.size() != types) throw PreconditionError("utility table does not cover 2^n types");
  for (Subset::Mask m = 0; m < types; ++m) {
    const Subset s(m);
    for (int i = 0; i < n; ++i) {
      if (s.contains(i)) continue;
      const Rational step = utility[s.with(i).mask()] - utility[m];
      if (sgn(step) < 0) return false;
      for (int j = 0; j < n; ++j) {
        if (j == i || s.contains(j)) continue;
        const Subset sj = s.with(j);
        if (utility[sj.with(i).mask()] - utility[sj.mask()] < step) return false;
      }
    }
  }
  return true;
}

Rational expected_revenue(const OmdInstance& inst, const Mechanism& mech) {
  const std::vector<Rational> prob = kernels::type_prob_table(inst.prob);
  Rational revenue(0);
  for (Subset::Mask m = 0; m < prob.size(); ++m) revenue += prob[m] * mech.price[m];
  return revenue;
}

}  // namespace omd::mechanism
