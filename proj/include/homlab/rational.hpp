#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace homlab {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Parses "p/q", "p" or "-p/q". Throws Error(ParseError) on malformed input
/// or a zero denominator. The result is canonicalized.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or just "p" when the denominator is 1.
std::string format_rational(const Rational& value);

Rational make_rational(long num, long den = 1);

bool is_integer(const Rational& value);

/// Integer power, exponent may be negative (base must then be nonzero).
Rational pow_int(const Rational& base, long exponent);
BigInt pow_int(const BigInt& base, unsigned long exponent);

BigInt lcm(const BigInt& a, const BigInt& b);

BigInt binomial(unsigned long n, unsigned long k);
BigInt factorial(unsigned long n);

/// Exact q-th root of a nonnegative rational if it exists.
bool exact_root(const Rational& value, unsigned long degree, Rational& root);

/// Approximate log10 for reporting only. Handles values far outside the
/// double range by working on the mantissa/exponent split.
double log10_approx(const Rational& value);

}  // namespace homlab
