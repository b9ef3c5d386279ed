#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace liouville {

/// A finite string of base-k digits, one symbol per byte, values 0..k-1.
using Digits = std::vector<std::uint8_t>;
using DigitView = std::span<const std::uint8_t>;

inline constexpr unsigned kMaxBase = 36;

// Default caps. Both can be overridden per call; the CLI reads
// LIOUVILLE_MAX_DIGITS from the environment.
inline constexpr std::uint64_t kDefaultSymbolCap = std::uint64_t{1} << 28;
inline constexpr std::uint64_t kDefaultDigitBudget = std::uint64_t{1} << 26;

/// Renders digits as ASCII ('0'..'9', then 'a'..'z').
std::string to_ascii(DigitView digits);

/// Parses ASCII digits; throws InvalidArgument on a symbol outside 0..base-1.
Digits from_ascii(std::string_view text, unsigned base);

char digit_char(std::uint8_t d);

/// Throws InvalidArgument unless every symbol is < base.
void check_alphabet(DigitView digits, unsigned base, std::string_view what);

void check_base(unsigned base);

/// Saturating k^n; returns UINT64_MAX on overflow.
std::uint64_t saturating_pow(std::uint64_t k, std::uint64_t n);

}  // namespace liouville
