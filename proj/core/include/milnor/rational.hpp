#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace milnor {

// Exact rational in lowest terms with positive denominator. GMP keeps the
// canonical form after every arithmetic operation; values built from text
// go through parse_rational, which canonicalizes.
using Rational = mpq_class;
using Integer = mpz_class;

// Accepts "p", "-p", "p/q" with optional surrounding whitespace. Throws
// std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

// Nearest double (round-to-nearest, unlike mpq_get_d which truncates).
double to_double(const Rational& r);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

}  // namespace milnor
