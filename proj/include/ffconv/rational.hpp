#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ffconv {

/// Exact rational number. GMP keeps it canonical (lowest terms, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p", "p/q", or a finite decimal such as "-0.125" into an exact rational.
Rational parse_rational(std::string_view text);

/// "num/den", or just "num" when the denominator is one.
std::string to_string(const Rational& value);

/// Exact conversion of a finite double (every double is a dyadic rational).
Rational rational_from_double(double value);

double to_double(const Rational& value);

Integer binomial(unsigned long n, unsigned long k);
Integer factorial(unsigned long n);

int sign(const Rational& value);

}  // namespace ffconv
