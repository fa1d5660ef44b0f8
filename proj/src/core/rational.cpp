#include "omd/core/rational.hpp"

#include <cctype>

#include "omd/core/error.hpp"

namespace omd {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw PreconditionError("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) ||
      (slash != std::string_view::npos && (den.front() == '-' || den.front() == '+'))) {
    throw ParseError("malformed rational literal \"" + std::string(text) + "\"");
  }
  const Integer d = parse_integer(den);
  if (d == 0) throw ParseError("zero denominator in \"" + std::string(text) + "\"");
  return make_rational(parse_integer(num), d);
}

std::string format_rational(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational power(const Rational& base, unsigned exponent) {
  Rational result(1);
  mpz_pow_ui(result.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(result.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  // Powers of a canonical fraction stay canonical; sign lands in the numerator.
  return result;
}

Integer binomial(unsigned n, unsigned k) {
  Integer r;
  if (k > n) return r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

std::size_t denominator_bits(const Rational& value) {
  return mpz_sizeinbase(value.get_den_mpz_t(), 2);
}

bool is_dyadic(const Rational& value) {
  const mpz_srcptr den = value.get_den_mpz_t();
  return mpz_popcount(den) == 1;
}

}  // namespace omd
