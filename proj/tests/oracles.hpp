#pragma once

// Brute-force reference implementations used only by tests. None of these
// call into the library's algorithms they are checking.

#include <gmpxx.h>

#include <cstdint>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace oracle {

/// Lexicographically least binary-or-k-ary cyclic string of length k^n that
/// contains every n-window exactly once, by exhaustive enumeration.
inline std::string least_debruijn(unsigned k, unsigned n) {
    std::uint64_t len = 1;
    for (unsigned i = 0; i < n; ++i) len *= k;
    std::vector<unsigned> s(len, 0);
    while (true) {
        std::set<std::string> seen;
        bool ok = true;
        for (std::uint64_t i = 0; i < len && ok; ++i) {
            std::string w;
            for (unsigned j = 0; j < n; ++j) w.push_back(static_cast<char>('0' + s[(i + j) % len]));
            ok = seen.insert(w).second;
        }
        if (ok) {
            std::string out;
            for (auto d : s) out.push_back(static_cast<char>('0' + d));
            return out;
        }
        // next string in lexicographic order
        std::int64_t pos = static_cast<std::int64_t>(len) - 1;
        while (pos >= 0 && s[pos] == k - 1) s[pos--] = 0;
        if (pos < 0) return {};
        ++s[pos];
    }
}

inline std::uint64_t cyclic_count(const std::string& text, const std::string& w) {
    std::uint64_t count = 0;
    const std::string doubled = text + text;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (doubled.compare(i, w.size(), w) == 0) ++count;
    }
    return count;
}

inline std::uint64_t linear_count(const std::string& text, const std::string& w) {
    std::uint64_t count = 0;
    for (std::size_t i = 0; i + w.size() <= text.size(); ++i) {
        if (text.compare(i, w.size(), w) == 0) ++count;
    }
    return count;
}

/// All length-m strings over {0..k-1}, in lexicographic order.
inline std::vector<std::string> all_words(unsigned k, unsigned m) {
    std::vector<std::string> out{""};
    for (unsigned i = 0; i < m; ++i) {
        std::vector<std::string> next;
        for (const auto& w : out) {
            for (unsigned d = 0; d < k; ++d) next.push_back(w + static_cast<char>('0' + d));
        }
        out = std::move(next);
    }
    return out;
}

/// Digits of num/den by repeated multiply-by-base long division.
inline std::string long_division(mpz_class num, const mpz_class& den, unsigned base, std::size_t count) {
    std::string out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        num *= base;
        mpz_class q = num / den;
        num -= q * den;
        const unsigned d = static_cast<unsigned>(q.get_ui());
        out.push_back(d < 10 ? static_cast<char>('0' + d) : static_cast<char>('a' + d - 10));
    }
    return out;
}

/// Counts of each window, via std::map.
inline std::map<std::string, std::uint64_t> sliding_counts(const std::string& x, unsigned m) {
    std::map<std::string, std::uint64_t> out;
    for (std::size_t i = 0; i + m <= x.size(); ++i) ++out[x.substr(i, m)];
    return out;
}

inline std::map<std::string, std::uint64_t> disjoint_counts(const std::string& x, unsigned m) {
    std::map<std::string, std::uint64_t> out;
    for (std::size_t i = 0; i + m <= x.size(); i += m) ++out[x.substr(i, m)];
    return out;
}

inline std::map<std::string, std::uint64_t> cyclic_counts(const std::string& x, unsigned m) {
    std::map<std::string, std::uint64_t> out;
    std::string ext = x;
    while (ext.size() < x.size() + m) ext += x;
    for (std::size_t i = 0; i < x.size(); ++i) ++out[ext.substr(i, m)];
    return out;
}

inline double entropy_bits(const std::map<std::string, std::uint64_t>& counts) {
    double total = 0;
    for (const auto& [w, c] : counts) total += static_cast<double>(c);
    double h = 0;
    for (const auto& [w, c] : counts) {
        const double p = static_cast<double>(c) / total;
        h += p * std::log2(1.0 / p);
    }
    return h;
}

/// Order of a mod p by enumerating a, a^2, ... until 1.
inline std::uint64_t brute_order(std::uint64_t a, std::uint64_t p) {
    std::uint64_t x = a % p;
    std::uint64_t order = 1;
    while (x != 1) {
        x = x * a % p;
        ++order;
        if (order > p) return 0;
    }
    return order;
}

inline bool brute_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

}  // namespace oracle
