#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace chow {

/// Exact rational scalar. gmpxx keeps every result in lowest terms with a
/// positive denominator, so equality is structural.
using Rational = mpq_class;
using Integer = mpz_class;

/// num / den in lowest terms. The two-argument mpq_class constructor does
/// not canonicalize, so use this for computed fractions.
inline Rational ratio(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "p", "-p", "p/q" (q != 0). Throws chow::ParseError on bad input.
Rational parse_rational(std::string_view text);

/// Canonical text: "p" for integers, otherwise "p/q" in lowest terms.
std::string to_string(const Rational& q);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

Rational binomial(long n, long k);
Rational factorial(long n);
Rational power(const Rational& base, long exponent);

}  // namespace chow
