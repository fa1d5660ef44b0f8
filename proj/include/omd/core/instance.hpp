#pragma once

#include <span>
#include <vector>

#include "omd/core/rational.hpp"
#include "omd/core/subset.hpp"

namespace omd {

/// A single additive bidder whose value for item i is low[i] with probability
/// 1 - prob[i] and low[i] + increment[i] with probability prob[i], independently.
///
/// low[i] == 0 is admitted here (the brute-force oracle handles it) but the
/// structured pipeline starting at to_lp2_params requires low[i] > 0.
struct OmdInstance {
  std::vector<Rational> low;
  std::vector<Rational> increment;
  std::vector<Rational> prob;

  /// Validates equal lengths, increment > 0, 0 < prob < 1, low >= 0.
  static OmdInstance create(std::vector<Rational> low, std::vector<Rational> increment,
                            std::vector<Rational> prob);

  [[nodiscard]] int size() const { return static_cast<int>(low.size()); }
  friend bool operator==(const OmdInstance&, const OmdInstance&) = default;
};

/// Parameters of the relaxed utility-only program:
///
///   max  sum_S p(S) (sum_{i in S} weight_i - offset) u(S)
///   s.t. u(S + i) - u(S) <= increment_i,  u >= 0.
struct Lp2Params {
  std::vector<Rational> weight;
  Rational offset;
  std::vector<Rational> increment;
  std::vector<Rational> prob;

  /// Validates equal lengths, weight > 0, offset > 0, increment > 0, 0 < prob < 1.
  static Lp2Params create(std::vector<Rational> weight, Rational offset,
                          std::vector<Rational> increment, std::vector<Rational> prob);

  [[nodiscard]] int size() const { return static_cast<int>(weight.size()); }

  /// offset - sum_i prob_i weight_i. For params built by to_lp2_params this is
  /// exactly the scale factor kappa; it is positive iff the params map back to
  /// an instance.
  [[nodiscard]] Rational scale() const;

  friend bool operator==(const Lp2Params&, const Lp2Params&) = default;
};

/// prod_{i in S} prob_i * prod_{j not in S} (1 - prob_j)
Rational type_prob(std::span<const Rational> prob, Subset s);
inline Rational type_prob(const OmdInstance& inst, Subset s) { return type_prob(inst.prob, s); }

/// low_i + increment_i for i in S, low_i otherwise.
std::vector<Rational> type_vector(const OmdInstance& inst, Subset s);

/// offset = kappa (1 + sum low_i/increment_i), weight_i = kappa low_i / (prob_i increment_i).
Lp2Params to_lp2_params(const OmdInstance& inst, const Rational& kappa);

struct RecoveredInstance {
  OmdInstance instance;
  Rational kappa;
};

/// Inverse map: kappa = offset - sum prob_i weight_i, low_i = prob_i increment_i weight_i / kappa.
/// Requires offset > sum prob_i weight_i strictly.
RecoveredInstance from_lp2_params(const Lp2Params& params);

}  // namespace omd
