#include "omd/lattice/flow.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "omd/core/error.hpp"
#include "omd/parallel/kernels.hpp"

namespace omd::lattice {

std::optional<Subset> FlowSolution::boundary_node() const {
  if (partially_filled) return partially_filled;
  if (exactly_saturated_boundary && !fill_order.empty()) return fill_order.back();
  return std::nullopt;
}

Rational node_cost(std::span<const Rational> increment, Subset s, int m) {
  Rational cost(0);
  for (int i = 0; i < m; ++i) {
    if (!s.contains(i)) cost += increment[static_cast<std::size_t>(i)];
  }
  return cost;
}

Rational node_balance(const Lp2Params& params, Subset s) {
  Rational excess = -params.offset;
  for (int i = 0; i < params.size(); ++i) {
    if (s.contains(i)) excess += params.weight[i];
  }
  return type_prob(params.prob, s) * excess;
}

std::optional<Subset> single_positive_violation(const Lp2Params& params) {
  const int n = params.size();
  Rational total(0);
  int lightest = 0;
  for (int i = 0; i < n; ++i) {
    total += params.weight[i];
    if (params.weight[i] < params.weight[lightest]) lightest = i;
  }
  const Subset full = Subset::full(n);
  if (total < params.offset) return full;
  // Weights are positive, so the heaviest proper subset drops the lightest item.
  if (total - params.weight[lightest] >= params.offset) return full.without(lightest);
  return std::nullopt;
}

bool check_single_positive(const Lp2Params& params) {
  return !single_positive_violation(params).has_value();
}

FlowSolution canonical_solution(const Lp2Params& params) {
  const int n = params.size();
  if (n > kMaxItems) {
    throw GuardError("lattice enumeration guard: n = " + std::to_string(n) + " exceeds " +
                     std::to_string(kMaxItems));
  }
  if (sgn(params.scale()) < 0) {
    throw PreconditionError("infeasible flow program: sum p_i x_i exceeds offset by " +
                            format_rational(-params.scale()));
  }
  if (auto bad = single_positive_violation(params)) {
    throw PreconditionError("node " + bad->to_string() +
                            " violates the single-positive-node condition");
  }

  const std::vector<Rational> balance = kernels::balance_table(params);
  const Subset full = Subset::full(n);

  FlowSolution sol;
  sol.n = n;
  sol.layout = lp::FlowLayout(n);
  sol.supply = balance[full.mask()];
  sol.edge_flow.assign(static_cast<std::size_t>(sol.layout.num_edges()), Rational(0));
  sol.absorbed.assign(subset_count(n), Rational(0));

  struct Node {
    Subset set;
    Rational cost;
  };
  std::vector<Node> sinks;
  sinks.reserve(subset_count(n) - 1);
  for (Subset::Mask m = 0; m < full.mask(); ++m) {
    sinks.push_back(Node{Subset(m), node_cost(params.increment, Subset(m), n)});
  }
  std::stable_sort(sinks.begin(), sinks.end(), [](const Node& a, const Node& b) {
    if (a.cost != b.cost) return a.cost < b.cost;
    return lex_leq(a.set, b.set) && a.set != b.set;
  });

  Rational remaining = sol.supply;
  for (const Node& node : sinks) {
    if (sgn(remaining) == 0) break;
    const Rational capacity = -balance[node.set.mask()];
    const Rational take = std::min(capacity, remaining);
    remaining -= take;
    sol.absorbed[node.set.mask()] = take;
    sol.fill_order.push_back(node.set);
    sol.total_cost += take * node.cost;

    Subset at = full;
    for (int i = 0; i < n; ++i) {
      if (node.set.contains(i)) continue;
      sol.edge_flow[static_cast<std::size_t>(sol.layout.edge(at, i))] += take;
      at = at.without(i);
    }

    if (take < capacity) {
      sol.partially_filled = node.set;
    } else if (sgn(remaining) == 0) {
      sol.exactly_saturated_boundary = true;
    }
  }
  if (sgn(remaining) != 0) {
    throw InvariantError("negative nodes could not absorb the supply of N");
  }

  // Every monotone path to a node costs node_cost, so the edge-level cost
  // must equal the node-level one.
  Rational edge_cost(0);
  for (int e = 0; e < sol.layout.num_edges(); ++e) {
    edge_cost += sol.edge_flow[static_cast<std::size_t>(e)] *
                 params.increment[static_cast<std::size_t>(sol.layout.edge_item(e))];
  }
  if (edge_cost != sol.total_cost) {
    throw InvariantError("routed flow cost differs from node cost total");
  }
  return sol;
}

void dump_lattice(const Lp2Params& params, const FlowSolution& flow, std::ostream& out) {
  const int n = params.size();
  for (Subset::Mask m = subset_count(n); m-- > 0;) {
    const Subset s(m);
    out << s.to_string() << " cost=" << format_rational(node_cost(params.increment, s, n))
        << " balance=" << format_rational(node_balance(params, s))
        << " absorbed=" << format_rational(flow.absorbed[m]) << "\n";
  }
}

}  // namespace omd::lattice
