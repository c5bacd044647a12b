#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace geopart {

// Exact rational scalar. mpq_class keeps values canonical (reduced, positive
// denominator) after every arithmetic operation.
using Rational = mpq_class;

// Accepts integers ("-3"), fractions ("7/4"), decimals ("1.25", "-0.5") and
// decimals with an exponent ("2.5e-3"). Conversion is exact.
// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

// "p" for integers, "p/q" otherwise. parse_rational(format_rational(x)) == x.
std::string format_rational(const Rational& value);

int sign(const Rational& value);
Rational abs_value(const Rational& value);
double to_double(const Rational& value);

}  // namespace geopart
