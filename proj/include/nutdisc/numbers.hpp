#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>

namespace nutdisc {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Number of bits needed to write n >= 0 (0 for n = 0).
std::size_t bit_length(const BigInt& n);

/// 2^k as an exact integer.
BigInt pow2(std::size_t k);

/// 2^-k as an exact rational.
Rational inv_pow2(std::size_t k);

/// Lossless "p/q" rendering; integers render without a denominator.
std::string to_exact_string(const Rational& q);

/// Fixed-point decimal rendering with `digits` fractional digits, correctly rounded.
std::string to_decimal_string(const Rational& q, int digits = 12);

double to_double(const Rational& q);

/// Parses a decimal or "p/q" string; throws Error(parse) on malformed input.
Rational parse_rational(const std::string& text);

BigInt parse_bigint(const std::string& text);

}  // namespace nutdisc
