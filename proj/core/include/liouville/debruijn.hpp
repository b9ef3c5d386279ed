#pragma once

#include <cstdint>

#include "liouville/digits.hpp"

namespace liouville {

/// Canonical (lexicographically least) de Bruijn sequence B(k, n).
///
/// Holds k^n symbols over {0, ..., k-1}; read cyclically, every string of
/// length n appears exactly once.
struct DeBruijnSequence {
    unsigned alphabet_size = 0;
    unsigned order = 0;
    Digits digits;

    [[nodiscard]] std::uint64_t size() const noexcept { return digits.size(); }
    friend bool operator==(const DeBruijnSequence&, const DeBruijnSequence&) = default;
};

/// Builds B(k, n) by concatenating, in lexicographic order, the Lyndon words
/// over {0..k-1} whose length divides n (Fredricksen-Kessler-Maiorana).
///
/// Throws InvalidArgument when k < 2 or n < 1, and BudgetExceeded when k^n is
/// above `max_symbols`.
DeBruijnSequence generate_debruijn(unsigned k, unsigned n,
                                   std::uint64_t max_symbols = kDefaultSymbolCap);

/// Number of cyclic windows of `seq` equal to `w` (windows wrap past the end).
std::uint64_t cyclic_occurrences(const DeBruijnSequence& seq, DigitView w);

}  // namespace liouville
