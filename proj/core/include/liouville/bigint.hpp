#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "liouville/digits.hpp"

namespace liouville {

using BigInt = mpz_class;

BigInt big_pow(std::uint64_t base, std::uint64_t exponent);
BigInt big_pow(const BigInt& base, std::uint64_t exponent);
BigInt factorial(std::uint64_t n);

std::string to_string(const BigInt& value);
bool fits_u64(const BigInt& value);
/// Throws BudgetExceeded when the value does not fit.
std::uint64_t to_u64(const BigInt& value, const char* what = "value");

/// Ceiling of log2(q) for q >= 1.
std::uint64_t ceil_log2(const BigInt& q);

/// Integer whose base-k numeral (most significant first) is `digits`.
BigInt from_digits(DigitView digits, unsigned base);

/// The `width` least significant base-k digits of a nonnegative integer,
/// most significant first, zero padded.
Digits to_digits(const BigInt& value, unsigned base, std::uint64_t width);

}  // namespace liouville
