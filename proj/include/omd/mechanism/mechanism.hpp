#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "omd/core/instance.hpp"
#include "omd/lattice/flow.hpp"
#include "omd/parallel/exec.hpp"

namespace omd::mechanism {

inline constexpr int kMaxVerifyItems = 14;

/// A direct mechanism over all 2^n types: interim utility u(S), allocation
/// marginals q(S), and expected price tau(S) = v(S).q(S) - u(S).
struct Mechanism {
  int n = 0;
  std::vector<Rational> utility;     // by mask
  std::vector<Rational> allocation;  // mask * n + item
  std::vector<Rational> price;       // by mask
  /// Set when the construction certifies a unique optimum.
  bool unique = false;

  [[nodiscard]] const Rational& u(Subset s) const { return utility[s.mask()]; }
  [[nodiscard]] const Rational& tau(Subset s) const { return price[s.mask()]; }
  [[nodiscard]] const Rational& q(Subset s, int item) const {
    return allocation[s.mask() * static_cast<std::size_t>(n) + static_cast<std::size_t>(item)];
  }
  [[nodiscard]] std::span<const Rational> q(Subset s) const {
    return std::span<const Rational>(allocation).subspan(s.mask() * static_cast<std::size_t>(n),
                                                         static_cast<std::size_t>(n));
  }
};

/// Fills in prices from utilities and allocations.
Mechanism from_utility_allocation(const OmdInstance& inst, std::vector<Rational> utility,
                                  std::vector<Rational> allocation, bool unique = false);

/// u(S) = max{cost(S*) - cost(S), 0} with S* the flow's boundary node;
/// q_i(S) = 1 for i in S, else (u(S + i) - u(S)) / increment_i; prices use the
/// instance recovered from `params`. Zero supply yields u = 0 (non-unique).
Mechanism closed_form_mechanism(const Lp2Params& params, const lattice::FlowSolution& flow);

enum class ViolationKind { incentive, participation, probability, price };

struct Violation {
  ViolationKind kind;
  Subset truth;   // true type S
  Subset report;  // misreport T (incentive rows only)
  int item = -1;  // probability rows only
  Rational slack;  // negative for inequality rows; tau - (v.q - u) for price rows
};

struct VerificationReport {
  std::size_t incentive_checked = 0;
  std::size_t participation_checked = 0;
  std::size_t probability_checked = 0;
  std::size_t price_checked = 0;
  std::vector<Violation> violations;  // ordered by truth mask, then row kind

  [[nodiscard]] bool ok() const { return violations.empty(); }
  [[nodiscard]] std::size_t checked() const {
    return incentive_checked + participation_checked + probability_checked + price_checked;
  }
};

const char* to_string(ViolationKind kind);

/// Checks u(S) >= u(T) + (v(S) - v(T)).q(T) for every ordered pair, u >= 0,
/// 0 <= q <= 1, and price consistency. Weak inequalities count as satisfied.
VerificationReport verify_bic_ir(const OmdInstance& inst, const Mechanism& mech,
                                 Exec exec = Exec::parallel);

/// u(S) <= u(S + i) and u(S + i + j) - u(S + j) >= u(S + i) - u(S).
bool is_monotone_supermodular(std::span<const Rational> utility, int n);

/// sum_S p(S) tau(S)
Rational expected_revenue(const OmdInstance& inst, const Mechanism& mech);

}  // namespace omd::mechanism
