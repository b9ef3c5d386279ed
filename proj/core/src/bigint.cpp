#include "liouville/bigint.hpp"

#include <algorithm>
#include <limits>
#include <vector>
#include <string>

#include "liouville/errors.hpp"

namespace liouville {

BigInt big_pow(std::uint64_t base, std::uint64_t exponent) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exponent);
    return r;
}

BigInt big_pow(const BigInt& base, std::uint64_t exponent) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
    return r;
}

BigInt factorial(std::uint64_t n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

std::string to_string(const BigInt& value) { return value.get_str(10); }

bool fits_u64(const BigInt& value) {
    return sgn(value) >= 0 && mpz_sizeinbase(value.get_mpz_t(), 2) <= 64;
}

std::uint64_t to_u64(const BigInt& value, const char* what) {
    if (!fits_u64(value)) {
        throw BudgetExceeded(std::string(what) + " = " + to_string(value) +
                             " exceeds the 64-bit index range");
    }
    static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
    return mpz_get_ui(value.get_mpz_t());
}

std::uint64_t ceil_log2(const BigInt& q) {
    if (q <= 1) return 0;
    BigInt qm1 = q - 1;
    return mpz_sizeinbase(qm1.get_mpz_t(), 2);
}

BigInt from_digits(DigitView digits, unsigned base) {
    check_base(base);
    if (digits.empty()) return 0;
    BigInt r;
    if (base == 2) {
        // Pack bits LSB-first into limbs.
        const std::size_t n = digits.size();
        std::vector<std::uint64_t> words((n + 63) / 64, 0);
        for (std::size_t i = 0; i < n; ++i) {
            if (digits[n - 1 - i]) words[i / 64] |= std::uint64_t{1} << (i % 64);
        }
        mpz_import(r.get_mpz_t(), words.size(), -1, sizeof(std::uint64_t), 0, 0, words.data());
        return r;
    }
    std::string text = to_ascii(digits);
    mpz_set_str(r.get_mpz_t(), text.c_str(), static_cast<int>(base));
    return r;
}

Digits to_digits(const BigInt& value, unsigned base, std::uint64_t width) {
    check_base(base);
    Digits out(width, 0);
    if (sgn(value) == 0 || width == 0) return out;
    if (base == 2) {
        for (std::uint64_t i = 0; i < width; ++i) {
            out[width - 1 - i] = static_cast<std::uint8_t>(mpz_tstbit(value.get_mpz_t(), i));
        }
        return out;
    }
    const std::string text = value.get_str(static_cast<int>(base));
    const std::size_t take = std::min<std::size_t>(text.size(), width);
    const Digits tail = from_ascii(std::string_view(text).substr(text.size() - take), base);
    std::copy(tail.begin(), tail.end(), out.end() - static_cast<std::ptrdiff_t>(take));
    return out;
}

}  // namespace liouville
