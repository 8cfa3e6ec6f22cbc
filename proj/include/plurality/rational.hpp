#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace plurality {

// Exact rational. mpq_class keeps values canonical (gcd 1, positive
// denominator) after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

// Parses "a/b", "a", or a decimal "x.yz" / "-x.yz" / "1e-3" exactly.
// Throws ParseError on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

// "a/b", or "a" when the denominator is 1.
std::string to_string(const Rational& value);

inline double to_double(const Rational& value) { return value.get_d(); }

}  // namespace plurality
