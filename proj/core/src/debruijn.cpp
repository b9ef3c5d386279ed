#include "liouville/debruijn.hpp"

#include <string>

#include "liouville/errors.hpp"

namespace liouville {

DeBruijnSequence generate_debruijn(unsigned k, unsigned n, std::uint64_t max_symbols) {
    if (k < 2) throw InvalidArgument("de Bruijn alphabet size must be >= 2");
    if (n < 1) throw InvalidArgument("de Bruijn order must be >= 1");
    check_base(k);
    const std::uint64_t length = saturating_pow(k, n);
    if (length > max_symbols) {
        throw BudgetExceeded("B(" + std::to_string(k) + "," + std::to_string(n) + ") needs " +
                             std::to_string(length) + " symbols, cap is " +
                             std::to_string(max_symbols));
    }

    DeBruijnSequence seq{k, n, {}};
    seq.digits.reserve(length);

    // Duval's successor walk over Lyndon prefixes: `word` holds the current
    // prenecklace; emit it whenever its length divides n.
    std::vector<int> word{-1};
    const int top = static_cast<int>(k) - 1;
    while (!word.empty()) {
        ++word.back();
        const std::size_t period = word.size();
        if (n % period == 0) {
            for (int d : word) seq.digits.push_back(static_cast<std::uint8_t>(d));
        }
        while (word.size() < n) word.push_back(word[word.size() - period]);
        while (!word.empty() && word.back() == top) word.pop_back();
    }
    return seq;
}

std::uint64_t cyclic_occurrences(const DeBruijnSequence& seq, DigitView w) {
    check_alphabet(w, seq.alphabet_size, "pattern");
    const std::size_t len = seq.digits.size();
    if (w.empty()) throw InvalidArgument("pattern must be non-empty");
    if (w.size() > len) throw InvalidArgument("pattern longer than the sequence");

    std::uint64_t count = 0;
    for (std::size_t start = 0; start < len; ++start) {
        bool match = true;
        for (std::size_t j = 0; j < w.size(); ++j) {
            if (seq.digits[(start + j) % len] != w[j]) {
                match = false;
                break;
            }
        }
        if (match) ++count;
    }
    return count;
}

}  // namespace liouville
