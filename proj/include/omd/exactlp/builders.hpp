#pragma once

#include <vector>

#include "omd/core/instance.hpp"
#include "omd/core/subset.hpp"
#include "omd/exactlp/lp.hpp"

namespace omd::lp {

// Enumeration guards; `force` overrides them.
inline constexpr int kMaxItemsFullProgram = 8;
inline constexpr int kMaxItemsRelaxedProgram = 14;

struct Guard {
  bool force = false;
};

/// Variable layout of the full revenue program: u(S) at index mask(S), then
/// q_i(S) at 2^n + mask(S) * n + i.
struct RevenueLayout {
  int n;
  [[nodiscard]] int u(Subset s) const { return static_cast<int>(s.mask()); }
  [[nodiscard]] int q(Subset s, int item) const {
    return (1 << n) + static_cast<int>(s.mask()) * n + item;
  }
};

/// Variable layout of the relaxed program: u(S) at index mask(S).
struct UtilityLayout {
  int n;
  [[nodiscard]] int u(Subset s) const { return static_cast<int>(s.mask()); }
};

/// Variable layout of the flow program: one variable per covering edge
/// S + i -> S (i not in S), numbered by ascending (S, i).
class FlowLayout {
 public:
  explicit FlowLayout(int n);
  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] int num_edges() const { return static_cast<int>(lower_.size()); }
  /// Edge from `upper` to upper - {item}; item must belong to upper.
  [[nodiscard]] int edge(Subset upper, int item) const;
  [[nodiscard]] Subset edge_lower(int e) const { return lower_[static_cast<std::size_t>(e)]; }
  [[nodiscard]] int edge_item(int e) const { return item_[static_cast<std::size_t>(e)]; }

 private:
  int n_;
  std::vector<int> index_;  // lower.mask * n + item -> edge id, -1 if item in lower
  std::vector<Subset> lower_;
  std::vector<int> item_;
};

/// Full revenue program over (u, q): one incentive row per ordered pair of
/// distinct types, one participation row per type, 0 <= q <= 1 as bounds.
Problem build_revenue_lp(const OmdInstance& inst, Guard guard = {});

/// Relaxed program over u alone: u(S + i) - u(S) <= increment_i, u >= 0.
Problem build_utility_lp(const Lp2Params& params, Guard guard = {});

/// Dual of the relaxed program: min-cost flow down the subset lattice with
/// per-node balance rows  outflow - inflow >= p(S) (sum_{i in S} x_i - B).
Problem build_flow_lp(const Lp2Params& params, Guard guard = {});

}  // namespace omd::lp
