#pragma once

// Arbitrary-precision integers and rationals. Every probability and measure in
// the library is a Rational; nothing is ever rounded.

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace randinst {

using BigInt = mpz_class;
using Rational = mpq_class;

/// num/den in lowest terms. Throws std::invalid_argument when den == 0.
Rational make_rational(const BigInt& num, const BigInt& den);

/// 2^-k.
Rational pow2_inverse(std::uint64_t k);

BigInt pow2(std::uint64_t k);
BigInt pow(const BigInt& base, std::uint64_t exponent);

/// n!, memoised per process.
const BigInt& factorial(unsigned n);

/// "num/den", always with an explicit denominator ("0/1", "1/1").
std::string to_fraction_string(const Rational& r);

/// Decimal rendering truncated (not rounded) to `digits` fractional digits.
std::string to_decimal_string(const Rational& r, int digits = 12);

/// Parses "a/b" or "a". Throws std::invalid_argument on malformed input.
Rational parse_rational(const std::string& text);

std::string to_string(const BigInt& v);

}  // namespace randinst
