#pragma once

#include <cstdint>

#include "omd/mechanism/mechanism.hpp"

namespace omd::mechanism {

/// Exact Bernoulli(prob) draw: reveals a uniform dyadic in [0, 1) 32 bits at
/// a time until its interval lies entirely below or above `prob`.
/// The generator must produce at least 32 uniform bits per call.
template <class Urbg>
bool bernoulli(const Rational& prob, Urbg& rng) {
  static_assert(Urbg::min() == 0 && Urbg::max() >= 0xFFFFFFFFULL);
  if (sgn(prob) <= 0) return false;
  if (prob >= 1) return true;
  Rational low(0);
  Rational width(1);
  const Rational chunk(Integer(1), Integer(1) << 32);
  for (;;) {
    width *= chunk;
    low += Rational(static_cast<unsigned long>(rng() & 0xFFFFFFFFULL)) * width;
    if (low + width <= prob) return true;
    if (low >= prob) return false;
  }
}

struct Draw {
  Subset allocated;
  Rational price;
};

/// Includes each item i independently with probability q_i(S); the price is
/// the deterministic expected price tau(S).
template <class Urbg>
Draw sample_allocation(const Mechanism& mech, Subset type, Urbg& rng) {
  Draw draw{Subset(), mech.tau(type)};
  for (int i = 0; i < mech.n; ++i) {
    if (bernoulli(mech.q(type, i), rng)) draw.allocated = draw.allocated.with(i);
  }
  return draw;
}

}  // namespace omd::mechanism
