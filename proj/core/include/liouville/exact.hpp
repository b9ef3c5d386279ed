#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "liouville/bigint.hpp"
#include "liouville/constructions.hpp"
#include "liouville/digits.hpp"

namespace liouville {

/// numerator / denominator with denominator > 0. Never reduced implicitly:
/// the unreduced denominator is what Liouville checks are stated against.
class ExactRational {
public:
    ExactRational() : num_(0), den_(1) {}
    ExactRational(BigInt numerator, BigInt denominator);
    explicit ExactRational(const BigInt& integer) : num_(integer), den_(1) {}

    [[nodiscard]] const BigInt& numerator() const noexcept { return num_; }
    [[nodiscard]] const BigInt& denominator() const noexcept { return den_; }

    /// Copy in lowest terms.
    [[nodiscard]] ExactRational reduced() const;
    [[nodiscard]] ExactRational abs() const;

    friend ExactRational operator+(const ExactRational& a, const ExactRational& b);
    friend ExactRational operator-(const ExactRational& a, const ExactRational& b);
    friend ExactRational operator*(const ExactRational& a, const ExactRational& b);
    ExactRational& operator+=(const ExactRational& rhs) { return *this = *this + rhs; }

    friend std::strong_ordering operator<=>(const ExactRational& a, const ExactRational& b);
    /// Value equality (1/2 == 2/4).
    friend bool operator==(const ExactRational& a, const ExactRational& b);

    [[nodiscard]] std::string to_string() const;

private:
    BigInt num_;
    BigInt den_;
};

/// 1 / base^exponent.
ExactRational inverse_power(std::uint64_t base, std::uint64_t exponent);

/// First `count` base-k digits of r, 0 <= r < 1. Equivalent to repeated
/// multiply-by-k long division; computed as floor(r * k^count).
Digits expansion_digits(const ExactRational& r, unsigned base, std::uint64_t count,
                        std::uint64_t budget = kDefaultDigitBudget);

/// Stage caps for convergent/verification work.
struct StageLimits {
    unsigned max_stage_alpha = 6;      // alpha and diluted
    unsigned max_stage_factorial = 7;  // psi1 and psi2
    std::uint64_t max_digits = kDefaultDigitBudget;
};

/// Stage-i rational approximant of a construction.
struct Convergent {
    ExactRational value;
    unsigned stage = 0;
    /// Guaranteed length of the common prefix of value's expansion and the stream.
    BigInt agreement_digits;
    /// ceil(log2 q) for the unreduced denominator q.
    std::uint64_t q_bits = 0;
};

/// Psi1: sum_{j<=i} 2^{-j!}. Psi2: sum_{3<=j<=i} j 2^{-j!}.
/// Alpha/diluted: the first b_{i-1} digits followed by the stage-i period block
/// recurring forever, summed as a geometric series.
///
/// Throws InvalidArgument for a stage below recipe.first_stage(), and
/// BudgetExceeded when the stage exceeds `limits`.
Convergent convergent(const ConstructionRecipe& recipe, unsigned i, const StageLimits& limits = {});

enum class Certificate {
    None,
    DigitMargin,  // shared prefix of length b with i*q_bits + 1 <= b (in bits)
    TailBound,    // closed-form tail bound of the factorial series
};
std::string_view to_string(Certificate c);

struct VerificationReport {
    unsigned stage = 0;
    std::uint64_t q_bits = 0;
    /// Number of leading digits where stream and convergent expansion agree
    /// (checked up to the guaranteed length).
    BigInt agreement;
    /// Digits of agreement needed for the margin certificate.
    BigInt required;
    bool digits_agree = false;
    bool margin_ok = false;
    bool tail_ok = false;
    bool holds = false;
    Certificate certificate = Certificate::None;
};

/// Decides |x - p/q| < 1/q^i for the stage-i convergent p/q using only exact
/// integer arithmetic.
///
/// (a) the stream and the expansion of p/q agree on the guaranteed b digits;
/// (b) base^b >= 2^{i*q_bits + 1}, so base^{-b} <= 1/(2 q^i).
/// For psi1/psi2 the closed-form tail sums give a second certificate that
/// replaces (b). A failed stage is reported, not thrown.
VerificationReport verify_liouville_stage(const ConstructionRecipe& recipe, unsigned i,
                                          const StageLimits& limits = {});

/// Smallest d with base^d >= 2^bits.
BigInt digits_for_bits(unsigned base, std::uint64_t bits);

}  // namespace liouville
