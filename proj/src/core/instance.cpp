#include "omd/core/instance.hpp"

#include <string>

#include "omd/core/error.hpp"

namespace omd {

namespace {

void require_same_length(std::size_t expected, std::size_t actual, const char* field) {
  if (actual != expected) {
    throw PreconditionError(std::string("field '") + field + "' has length " +
                            std::to_string(actual) + ", expected " + std::to_string(expected));
  }
}

void require_items(std::size_t n) {
  if (n == 0 || n > static_cast<std::size_t>(Subset::kMaxItems)) {
    throw PreconditionError("item count must be in 1.." + std::to_string(Subset::kMaxItems));
  }
}

void require_increments(const std::vector<Rational>& increment) {
  for (std::size_t i = 0; i < increment.size(); ++i) {
    if (sgn(increment[i]) <= 0) {
      throw PreconditionError("increment of item " + std::to_string(i + 1) + " must be positive");
    }
  }
}

void require_probabilities(const std::vector<Rational>& prob) {
  for (std::size_t i = 0; i < prob.size(); ++i) {
    if (sgn(prob[i]) <= 0 || prob[i] >= 1) {
      throw PreconditionError("probability of item " + std::to_string(i + 1) +
                              " must lie strictly between 0 and 1");
    }
  }
}

}  // namespace

OmdInstance OmdInstance::create(std::vector<Rational> low, std::vector<Rational> increment,
                                std::vector<Rational> prob) {
  require_items(low.size());
  require_same_length(low.size(), increment.size(), "d");
  require_same_length(low.size(), prob.size(), "p");
  for (std::size_t i = 0; i < low.size(); ++i) {
    if (sgn(low[i]) < 0) {
      throw PreconditionError("low value of item " + std::to_string(i + 1) + " is negative");
    }
  }
  require_increments(increment);
  require_probabilities(prob);
  return OmdInstance{std::move(low), std::move(increment), std::move(prob)};
}

Lp2Params Lp2Params::create(std::vector<Rational> weight, Rational offset,
                            std::vector<Rational> increment, std::vector<Rational> prob) {
  require_items(weight.size());
  require_same_length(weight.size(), increment.size(), "d");
  require_same_length(weight.size(), prob.size(), "p");
  for (std::size_t i = 0; i < weight.size(); ++i) {
    if (sgn(weight[i]) <= 0) {
      throw PreconditionError("weight of item " + std::to_string(i + 1) + " must be positive");
    }
  }
  if (sgn(offset) <= 0) throw PreconditionError("offset must be positive");
  require_increments(increment);
  require_probabilities(prob);
  return Lp2Params{std::move(weight), std::move(offset), std::move(increment), std::move(prob)};
}

Rational Lp2Params::scale() const {
  Rational s = offset;
  for (std::size_t i = 0; i < weight.size(); ++i) s -= prob[i] * weight[i];
  return s;
}

Rational type_prob(std::span<const Rational> prob, Subset s) {
  const int n = static_cast<int>(prob.size());
  if (!s.is_subset_of(Subset::full(n))) {
    throw std::out_of_range("subset " + s.to_string() + " not within 1.." + std::to_string(n));
  }
  Rational result(1);
  for (int i = 0; i < n; ++i) {
    if (s.contains(i)) {
      result *= prob[i];
    } else {
      result *= 1 - prob[i];
    }
  }
  return result;
}

std::vector<Rational> type_vector(const OmdInstance& inst, Subset s) {
  const int n = inst.size();
  if (!s.is_subset_of(Subset::full(n))) {
    throw std::out_of_range("subset " + s.to_string() + " not within 1.." + std::to_string(n));
  }
  std::vector<Rational> v(inst.low);
  for (int i = 0; i < n; ++i) {
    if (s.contains(i)) v[i] += inst.increment[i];
  }
  return v;
}

Lp2Params to_lp2_params(const OmdInstance& inst, const Rational& kappa) {
  if (sgn(kappa) <= 0) throw PreconditionError("kappa must be positive");
  const int n = inst.size();
  Rational ratio_sum(0);
  std::vector<Rational> weight(n);
  for (int i = 0; i < n; ++i) {
    if (sgn(inst.low[i]) == 0) {
      throw PreconditionError("low value of item " + std::to_string(i + 1) +
                              " is zero; the structured pipeline needs positive low values");
    }
    ratio_sum += inst.low[i] / inst.increment[i];
    weight[i] = kappa * inst.low[i] / (inst.prob[i] * inst.increment[i]);
  }
  Rational offset = kappa * (1 + ratio_sum);
  return Lp2Params{std::move(weight), std::move(offset), inst.increment, inst.prob};
}

RecoveredInstance from_lp2_params(const Lp2Params& params) {
  Rational kappa = params.scale();
  if (sgn(kappa) <= 0) {
    throw PreconditionError("offset " + format_rational(params.offset) +
                            " does not exceed sum p_i x_i; no instance maps to these params");
  }
  const int n = params.size();
  std::vector<Rational> low(n);
  for (int i = 0; i < n; ++i) {
    low[i] = params.prob[i] * params.increment[i] * params.weight[i] / kappa;
  }
  return RecoveredInstance{OmdInstance::create(std::move(low), params.increment, params.prob),
                           std::move(kappa)};
}

}  // namespace omd
