#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "omd/core/instance.hpp"
#include "omd/core/rational.hpp"

namespace omd::testing {

inline Rational Q(const char* text) { return parse_rational(text); }

inline std::vector<Rational> Qs(std::initializer_list<const char*> items) {
  std::vector<Rational> out;
  for (const char* t : items) out.push_back(parse_rational(t));
  return out;
}

inline Subset set_of(std::initializer_list<int> one_based, int n) {
  std::vector<int> v(one_based);
  return Subset::from_indices(v, n);
}

inline Lp2Params params(std::initializer_list<const char*> x, const char* b,
                        std::initializer_list<const char*> d,
                        std::initializer_list<const char*> p) {
  return Lp2Params::create(Qs(x), Q(b), Qs(d), Qs(p));
}

inline OmdInstance instance(std::initializer_list<const char*> a,
                            std::initializer_list<const char*> d,
                            std::initializer_list<const char*> p) {
  return OmdInstance::create(Qs(a), Qs(d), Qs(p));
}

/// Draws num/den with 1 <= num, den <= 20.
inline Rational small_positive(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> pick(1, 20);
  const long num = pick(rng);
  return make_rational(num, pick(rng));
}

inline Rational small_probability(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> den_pick(2, 20);
  const long den = den_pick(rng);
  std::uniform_int_distribution<long> num_pick(1, den - 1);
  return make_rational(num_pick(rng), den);
}

/// Utility-LP parameters with N the only nonnegative node and sum p x < offset:
/// offset drawn in (max(sum x - min x, sum p x), sum x] with denominator <= 20.
/// Weights, increments, and probabilities have numerator and denominator <= 20.
inline std::optional<Lp2Params> random_single_positive(std::mt19937_64& rng, int n) {
  std::vector<Rational> x, d, p;
  for (int i = 0; i < n; ++i) {
    x.push_back(small_positive(rng));
    d.push_back(small_positive(rng));
    p.push_back(small_probability(rng));
  }
  Rational total(0), weighted(0), lightest = x[0];
  for (int i = 0; i < n; ++i) {
    total += x[i];
    weighted += p[i] * x[i];
    if (x[i] < lightest) lightest = x[i];
  }
  const Rational low = std::max(Rational(total - lightest), weighted);
  std::uniform_int_distribution<long> den_pick(1, 20);
  for (int attempt = 0; attempt < 40; ++attempt) {
    const long den = den_pick(rng);
    // integers a with low < a/den <= total
    Integer first = low.get_num() * den / low.get_den() + 1;
    Integer last = total.get_num() * den / total.get_den();
    if (first > last) continue;
    const Integer span = last - first + 1;
    std::uniform_int_distribution<long> off(0, span.get_si() - 1);
    const Rational offset = make_rational(Integer(first + off(rng)), Integer(den));
    return Lp2Params::create(x, offset, d, p);
  }
  return std::nullopt;
}

/// A batch of `count` such parameter sets with n cycling through 1..max_n.
inline std::vector<Lp2Params> random_batch(std::uint64_t seed, int count, int max_n) {
  std::mt19937_64 rng(seed);
  std::vector<Lp2Params> out;
  int n = 1;
  while (static_cast<int>(out.size()) < count) {
    if (auto p = random_single_positive(rng, n)) out.push_back(std::move(*p));
    n = n % max_n + 1;
  }
  return out;
}

}  // namespace omd::testing
