#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace fcedge {

/// Arbitrary-precision signed integer.
using Integer = mpz_class;

/// Arbitrary-precision non-negative integer. Non-negativity is a contract of
/// the functions that produce it; the representation is shared with Integer.
using Natural = mpz_class;

/// Exact rational, always held in lowest terms with a positive denominator.
/// GMP keeps mpq_class canonical under arithmetic; make_rational() is the
/// only sanctioned way to build one from a numerator/denominator pair.
using Rational = mpq_class;

Rational make_rational(const Integer& num, const Integer& den);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Integer& value);
std::string to_string(const Rational& value);

/// Accepts "p", "p/q", or a plain decimal such as "1.5" or "-0.25" (read
/// exactly, not through a double).
Rational parse_rational(std::string_view text);

/// Natural log of |value| via mantissa/exponent splitting, so values far
/// outside the double range still produce a finite log.
double log_abs(const Integer& value);

/// Natural log of a strictly positive rational. Throws std::domain_error
/// otherwise.
double log_of(const Rational& value);

/// Nearest double; +-inf if out of range.
double to_double(const Rational& value);

Integer pow(const Integer& base, unsigned long exponent);
Rational pow(const Rational& base, unsigned long exponent);

}  // namespace fcedge
