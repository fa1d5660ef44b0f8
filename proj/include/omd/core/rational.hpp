#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>

namespace omd {

// GMP keeps every mpq_class in lowest terms with a positive denominator after
// each arithmetic operation; make_rational canonicalizes explicit fractions.
using Integer = mpz_class;
using Rational = mpq_class;

Rational make_rational(const Integer& num, const Integer& den);
inline Rational make_rational(long num, long den) {
  return make_rational(Integer(num), Integer(den));
}

/// Parses "num/den" or a bare integer "num". Whitespace is not accepted.
Rational parse_rational(std::string_view text);

/// Always emits "num/den", including "/1" for integers.
std::string format_rational(const Rational& value);

Rational power(const Rational& base, unsigned exponent);
Integer binomial(unsigned n, unsigned k);

/// Bit length of the (positive) denominator.
std::size_t denominator_bits(const Rational& value);

/// True iff the denominator is a power of two.
bool is_dyadic(const Rational& value);

}  // namespace omd
