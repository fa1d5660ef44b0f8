#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "omd/core/instance.hpp"
#include "omd/exactlp/builders.hpp"

namespace omd::lattice {

inline constexpr int kMaxItems = 20;

/// Greedy min-cost flow on the subset lattice: supply at the full set N,
/// sinks at every other node, edges S -> S - {i} costing increment_i.
struct FlowSolution {
  int n = 0;
  lp::FlowLayout layout{0};
  Rational supply;
  std::vector<Rational> edge_flow;  // by layout edge id
  std::vector<Rational> absorbed;   // sink deposit per node mask
  std::vector<Subset> fill_order;
  /// Last node receiving flow when it stays strictly below capacity.
  std::optional<Subset> partially_filled;
  /// Last node receiving flow was filled to exactly its capacity.
  bool exactly_saturated_boundary = false;
  Rational total_cost;

  [[nodiscard]] const Rational& flow(Subset upper, int item) const {
    return edge_flow[static_cast<std::size_t>(layout.edge(upper, item))];
  }
  /// The partially filled node, else the last node filled to capacity.
  [[nodiscard]] std::optional<Subset> boundary_node() const;
};

/// Sum of increment_i over items of {1..m} missing from S.
Rational node_cost(std::span<const Rational> increment, Subset s, int m);

/// p(S) (sum_{i in S} weight_i - offset): positive for sources, minus the
/// sink capacity for negative nodes.
Rational node_balance(const Lp2Params& params, Subset s);

/// True iff N is the only node with nonnegative balance.
bool check_single_positive(const Lp2Params& params);

/// A node witnessing failure of check_single_positive: N itself when its
/// balance is negative, else the heaviest proper subset when it is not negative.
std::optional<Subset> single_positive_violation(const Lp2Params& params);

/// Fills negative nodes in nondecreasing cost order (ties by lex_leq),
/// routing each node's share down the path that drops its missing items in
/// increasing index order. Requires a single positive node and
/// sum p_i x_i <= offset.
FlowSolution canonical_solution(const Lp2Params& params);

/// One line per node: subset, cost, balance, absorbed flow.
void dump_lattice(const Lp2Params& params, const FlowSolution& flow, std::ostream& out);

}  // namespace omd::lattice
