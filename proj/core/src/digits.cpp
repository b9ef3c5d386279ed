#include "liouville/digits.hpp"

#include <limits>

#include "liouville/errors.hpp"

namespace liouville {

char digit_char(std::uint8_t d) {
    return d < 10 ? static_cast<char>('0' + d) : static_cast<char>('a' + (d - 10));
}

std::string to_ascii(DigitView digits) {
    std::string out;
    out.reserve(digits.size());
    for (auto d : digits) out.push_back(digit_char(d));
    return out;
}

Digits from_ascii(std::string_view text, unsigned base) {
    check_base(base);
    Digits out;
    out.reserve(text.size());
    for (char c : text) {
        unsigned v = kMaxBase;
        if (c >= '0' && c <= '9') v = static_cast<unsigned>(c - '0');
        else if (c >= 'a' && c <= 'z') v = static_cast<unsigned>(c - 'a') + 10;
        else if (c >= 'A' && c <= 'Z') v = static_cast<unsigned>(c - 'A') + 10;
        if (v >= base) {
            throw InvalidArgument("symbol '" + std::string(1, c) + "' is not a base-" +
                                  std::to_string(base) + " digit");
        }
        out.push_back(static_cast<std::uint8_t>(v));
    }
    return out;
}

void check_alphabet(DigitView digits, unsigned base, std::string_view what) {
    for (auto d : digits) {
        if (d >= base) {
            throw InvalidArgument(std::string(what) + " contains symbol " + std::to_string(d) +
                                  " outside alphabet of size " + std::to_string(base));
        }
    }
}

void check_base(unsigned base) {
    if (base < 2 || base > kMaxBase) {
        throw InvalidArgument("base must lie in [2, " + std::to_string(kMaxBase) + "], got " +
                              std::to_string(base));
    }
}

std::uint64_t saturating_pow(std::uint64_t k, std::uint64_t n) {
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    if (k <= 1) return (k == 0 && n > 0) ? 0 : 1;
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < n; ++i) {
        if (k != 0 && r > kMax / k) return kMax;
        r *= k;
    }
    return r;
}

}  // namespace liouville
