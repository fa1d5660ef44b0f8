#include "omd/reduction/construction.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "omd/core/error.hpp"
#include "omd/lattice/flow.hpp"
#include "omd/mechanism/mechanism.hpp"

namespace omd::reduction {

namespace {

void check_shape(int n, int s, std::int64_t k) {
  if (n < 2) throw PreconditionError("need at least two values");
  if (s < 1 || s > n - 1) {
    throw PreconditionError("|S| must lie in 1..n-1, got " + std::to_string(s));
  }
  const Integer limit = binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(s));
  if (k < 1 || Integer(static_cast<long>(k)) > limit) {
    throw PreconditionError("k must lie in 1.." + limit.get_str() + ", got " + std::to_string(k));
  }
}

Rational upper_end(int n) { return 1 - Rational(1, 2 * n + 2); }

}  // namespace

Rational eval_f(int n, int s, const Rational& p) {
  if (sgn(p) <= 0 || p >= 1) throw PreconditionError("p must lie strictly inside (0, 1)");
  if (s < 1 || s > n - 1) throw PreconditionError("s must lie in 1..n-1");
  const Rational q = 1 - p;
  Rational numerator(0);
  for (int i = n - s + 1; i <= n; ++i) {
    numerator += Rational(binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(i))) *
                 power(p, static_cast<unsigned>(i)) * power(q, static_cast<unsigned>(n - i)) *
                 (2 * (i + p - n) - 1);
  }
  const Rational denominator = power(p, static_cast<unsigned>(n - s)) *
                               power(q, static_cast<unsigned>(s)) * (2 * s - 2 * p + 1);
  return numerator / denominator;
}

Integer derivative_bound(int n) {
  Integer m = 1;
  mpz_ui_pow_ui(m.get_mpz_t(), static_cast<unsigned long>(2 * n + 2),
                static_cast<unsigned long>(2 * n + 1));
  m *= 2 * n + 1;
  m <<= static_cast<mp_bitcnt_t>(4 * n + 2);
  return m;
}

Rational find_parameter(int n, int s, std::int64_t k) {
  check_shape(n, s, k);
  const Rational target = Rational(static_cast<long>(k)) - Rational(1, 4 * n + 4);
  const Rational window_low = Rational(static_cast<long>(k)) - Rational(1, 2 * n + 2);
  const Rational window_high(static_cast<long>(k));
  auto above = [&](const Rational& p) { return eval_f(n, s, p) >= target; };

  Rational lo(1, 2);
  if (above(lo)) throw InvariantError("f(1/2) is not below the target");
  if (!above(upper_end(n))) throw InvariantError("f at the bracket end is below the target");

  // Largest dyadic grid point below the bracket end where the sign is still
  // positive; keeps every midpoint dyadic.
  Rational hi;
  for (unsigned bits = 2;; ++bits) {
    const Integer grid = Integer(1) << bits;
    Integer num = upper_end(n).get_num() * grid / upper_end(n).get_den();
    hi = Rational(num, grid);
    hi.canonicalize();
    if (hi > lo && above(hi)) break;
  }

  Rational tolerance = 1 / (Rational(4 * n + 4) * Rational(derivative_bound(n)));
  for (;;) {
    while (hi - lo > tolerance) {
      Rational mid = (lo + hi) / 2;
      if (above(mid)) {
        hi = std::move(mid);
      } else {
        lo = std::move(mid);
      }
    }
    Rational p = (lo + hi) / 2;
    const Rational f = eval_f(n, s, p);
    if (f > window_low && f < window_high) return p;
    tolerance /= 2;
  }
}

ReductionOutput lexrank_to_omd(std::span<const std::int64_t> values, Subset set, std::int64_t k) {
  const int n = static_cast<int>(values.size());
  check_shape(n, set.size(), k);
  return lexrank_to_omd(values, set, k, find_parameter(n, set.size(), k));
}

ReductionOutput lexrank_to_omd(std::span<const std::int64_t> values, Subset set, std::int64_t k,
                               const Rational& p_tilde) {
  const int n = static_cast<int>(values.size());
  if (n + 1 > lattice::kMaxItems) {
    throw GuardError("reduction instance would exceed the lattice guard of " +
                     std::to_string(lattice::kMaxItems) + " items");
  }
  if (!set.is_subset_of(Subset::full(n))) throw PreconditionError("S lies outside {1..n}");
  check_shape(n, set.size(), k);
  for (std::int64_t c : values) {
    if (c <= 0) throw PreconditionError("C entries must be positive");
  }
  if (p_tilde < Rational(1, 2) || p_tilde >= upper_end(n)) {
    throw PreconditionError("p must lie in [1/2, 1 - 1/(2n+2))");
  }

  Integer total = 0;
  for (std::int64_t c : values) total += Integer(static_cast<long>(c));
  std::vector<Rational> increment;
  increment.reserve(static_cast<std::size_t>(n) + 1);
  for (int i = 1; i <= n; ++i) {
    Integer d = (Integer(static_cast<long>(values[static_cast<std::size_t>(i - 1)])) + total)
                << static_cast<mp_bitcnt_t>(n + 1);
    d += Integer(1) << static_cast<mp_bitcnt_t>(i);
    increment.emplace_back(d);
  }
  increment.emplace_back(1);

  Lp2Params params = Lp2Params::create(std::vector<Rational>(static_cast<std::size_t>(n) + 1, 2),
                                       Rational(2 * n + 1), increment,
                                       std::vector<Rational>(static_cast<std::size_t>(n) + 1,
                                                             p_tilde));
  RecoveredInstance recovered = from_lp2_params(params);

  std::vector<Subset> candidates;
  const int want = n - set.size();
  for (Subset::Mask m = 0; m < subset_count(n); ++m) {
    if (Subset(m).size() == want) candidates.emplace_back(m);
  }
  std::vector<std::pair<Rational, Subset>> keyed;
  keyed.reserve(candidates.size());
  for (Subset t : candidates) keyed.emplace_back(lattice::node_cost(increment, t, n + 1), t);
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return lex_leq(a.second, b.second) && a.second != b.second;
  });

  return ReductionOutput{std::move(recovered.instance),
                         std::move(params),
                         Subset::full(n) - set,
                         n,
                         p_tilde,
                         keyed[static_cast<std::size_t>(k - 1)].second};
}

CostStructure audit_cost_structure(const ReductionOutput& out) {
  const int m = out.params.size();
  const int n = m - 1;
  const auto& d = out.params.increment;
  const Subset everything = Subset::full(m);
  const Subset base = Subset::full(n);

  std::vector<Rational> costs;
  for (Subset::Mask mask = 0; mask < subset_count(m); ++mask) {
    if (Subset(mask) != everything) costs.push_back(lattice::node_cost(d, Subset(mask), m));
  }
  std::sort(costs.begin(), costs.end());

  CostStructure cs;
  cs.distinct_costs = std::adjacent_find(costs.begin(), costs.end()) == costs.end();

  const Rational base_cost = lattice::node_cost(d, base, m);
  cs.full_set_cheapest = cs.distinct_costs && costs.front() == base_cost;

  cs.no_cost_between_pairs = true;
  std::map<int, std::pair<Rational, Rational>> by_size;  // min, max cost per size
  for (Subset::Mask mask = 0; mask < subset_count(n); ++mask) {
    const Subset t(mask);
    if (t == base) continue;
    const Rational upper = lattice::node_cost(d, t, m);
    const Rational lower = lattice::node_cost(d, t.with(n), m);
    auto it = std::upper_bound(costs.begin(), costs.end(), lower);
    if (it != costs.end() && *it < upper) cs.no_cost_between_pairs = false;

    auto [entry, fresh] = by_size.try_emplace(t.size(), upper, upper);
    if (!fresh) {
      entry->second.first = std::min(entry->second.first, upper);
      entry->second.second = std::max(entry->second.second, upper);
    }
  }

  cs.larger_sets_cheaper = true;
  for (const auto& [size, range] : by_size) {
    for (const auto& [other, other_range] : by_size) {
      if (size > other && !(range.second < other_range.first)) cs.larger_sets_cheaper = false;
    }
  }
  return cs;
}

Decision decide(const ReductionOutput& out) {
  const lattice::FlowSolution flow = lattice::canonical_solution(out.params);
  const mechanism::Mechanism mech = mechanism::closed_form_mechanism(out.params, flow);
  Decision decision;
  decision.probe = mech.q(out.probe_type, out.distinguished_item);
  if (flow.partially_filled) {
    decision.has_partially_filled = true;
    decision.partially_filled = *flow.partially_filled;
  }
  if (decision.probe == 1) {
    decision.yes = true;
  } else if (sgn(decision.probe) != 0) {
    throw InvariantError("probe allocation " + format_rational(decision.probe) +
                         " is strictly between 0 and 1");
  }
  return decision;
}

bool decide_lexrank(std::span<const std::int64_t> values, Subset set, std::int64_t k) {
  return decide(lexrank_to_omd(values, set, k)).yes;
}

}  // namespace omd::reduction
