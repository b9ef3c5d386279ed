#include "liouville/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "liouville/errors.hpp"

namespace liouville {

ExactRational::ExactRational(BigInt numerator, BigInt denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
    if (sgn(den_) <= 0) throw InvalidArgument("rational denominator must be positive");
}

ExactRational ExactRational::reduced() const {
    BigInt g;
    mpz_gcd(g.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
    if (g <= 1) return *this;
    return {BigInt(num_ / g), BigInt(den_ / g)};
}

ExactRational ExactRational::abs() const {
    BigInt n = num_;
    if (sgn(n) < 0) n = -n;
    return {std::move(n), den_};
}

ExactRational operator+(const ExactRational& a, const ExactRational& b) {
    if (a.den_ == b.den_) return {BigInt(a.num_ + b.num_), a.den_};
    return {BigInt(a.num_ * b.den_ + b.num_ * a.den_), BigInt(a.den_ * b.den_)};
}

ExactRational operator-(const ExactRational& a, const ExactRational& b) {
    if (a.den_ == b.den_) return {BigInt(a.num_ - b.num_), a.den_};
    return {BigInt(a.num_ * b.den_ - b.num_ * a.den_), BigInt(a.den_ * b.den_)};
}

ExactRational operator*(const ExactRational& a, const ExactRational& b) {
    return {BigInt(a.num_ * b.num_), BigInt(a.den_ * b.den_)};
}

std::strong_ordering operator<=>(const ExactRational& a, const ExactRational& b) {
    const int c = cmp(BigInt(a.num_ * b.den_), BigInt(b.num_ * a.den_));
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

bool operator==(const ExactRational& a, const ExactRational& b) {
    return (a <=> b) == std::strong_ordering::equal;
}

std::string ExactRational::to_string() const {
    return num_.get_str() + "/" + den_.get_str();
}

ExactRational inverse_power(std::uint64_t base, std::uint64_t exponent) {
    return {BigInt(1), big_pow(base, exponent)};
}

Digits expansion_digits(const ExactRational& r, unsigned base, std::uint64_t count,
                        std::uint64_t budget) {
    check_base(base);
    if (sgn(r.numerator()) < 0 || r.numerator() >= r.denominator()) {
        throw InvalidArgument("expansion_digits expects 0 <= r < 1, got " + r.to_string());
    }
    if (count > budget) {
        throw BudgetExceeded("expansion of " + std::to_string(count) + " digits exceeds budget of " +
                             std::to_string(budget));
    }
    BigInt scaled;
    if (base == 2) {
        mpz_mul_2exp(scaled.get_mpz_t(), r.numerator().get_mpz_t(), count);
    } else {
        scaled = r.numerator() * big_pow(base, count);
    }
    BigInt whole;
    mpz_fdiv_q(whole.get_mpz_t(), scaled.get_mpz_t(), r.denominator().get_mpz_t());
    return to_digits(whole, base, count);
}

BigInt digits_for_bits(unsigned base, std::uint64_t bits) {
    check_base(base);
    if (std::has_single_bit(base)) {
        const std::uint64_t per = std::countr_zero(base);
        return BigInt((bits + per - 1) / per);
    }
    // Start from a floating estimate, then settle it with exact comparisons.
    const double estimate = static_cast<double>(bits) / std::log2(static_cast<double>(base));
    std::uint64_t d = estimate > 2 ? static_cast<std::uint64_t>(estimate) - 2 : 0;
    const BigInt target = big_pow(2, bits);
    BigInt power = big_pow(base, d);
    while (power < target) {
        power *= base;
        ++d;
    }
    return BigInt(d);
}

std::string_view to_string(Certificate c) {
    switch (c) {
        case Certificate::None: return "none";
        case Certificate::DigitMargin: return "digit-margin";
        case Certificate::TailBound: return "tail-bound";
    }
    return "?";
}

namespace {

void check_stage(const ConstructionRecipe& recipe, unsigned i, const StageLimits& limits) {
    recipe.validate();
    if (i < recipe.first_stage()) {
        throw InvalidArgument(recipe.name() + " has no stage " + std::to_string(i) +
                              " (first stage is " + std::to_string(recipe.first_stage()) + ")");
    }
    const bool factorial_kind = recipe.kind == ConstructionKind::LiouvillePsi1 ||
                                recipe.kind == ConstructionKind::DisjunctivePsi2;
    const unsigned cap = factorial_kind ? limits.max_stage_factorial : limits.max_stage_alpha;
    if (i > cap) {
        throw BudgetExceeded("stage " + std::to_string(i) + " of " + recipe.name() +
                             " exceeds the stage cap " + std::to_string(cap));
    }
}

// Prefix followed by `block` recurring: (A (P - 1) + B) / ((P - 1) base^len(prefix)),
// where P = base^len(block).
ExactRational prefix_then_recurring(DigitView prefix, DigitView block, unsigned base) {
    const BigInt a = from_digits(prefix, base);
    const BigInt b = from_digits(block, base);
    const BigInt period = big_pow(base, block.size()) - 1;
    return {BigInt(a * period + b), BigInt(period * big_pow(base, prefix.size()))};
}

}  // namespace

Convergent convergent(const ConstructionRecipe& recipe, unsigned i, const StageLimits& limits) {
    check_stage(recipe, i, limits);
    Convergent out;
    out.stage = i;
    switch (recipe.kind) {
        case ConstructionKind::LiouvillePsi1:
        case ConstructionKind::DisjunctivePsi2: {
            const bool psi2 = recipe.kind == ConstructionKind::DisjunctivePsi2;
            const BigInt top = factorial(i);
            const std::uint64_t top_u = to_u64(top);
            BigInt num = 0;
            for (unsigned j = recipe.first_stage(); j <= i; ++j) {
                BigInt term;
                mpz_mul_2exp(term.get_mpz_t(), BigInt(psi2 ? j : 1).get_mpz_t(),
                             top_u - to_u64(factorial(j)));
                num += term;
            }
            out.value = ExactRational(std::move(num), big_pow(2, top_u));
            // The next non-zero digit sits at the end of stage i+1.
            const std::uint64_t next_width =
                psi2 ? static_cast<std::uint64_t>(std::bit_width(i + 1u)) : 1;
            out.agreement_digits = factorial(i + 1) - next_width;
            break;
        }
        case ConstructionKind::NormalAlpha:
        case ConstructionKind::DilutedAlpha: {
            const std::uint64_t start = to_u64(stage_boundary(recipe, i - 1), "stage start");
            out.agreement_digits = stage_boundary(recipe, i);
            if (out.agreement_digits > limits.max_digits) {
                throw BudgetExceeded("stage " + std::to_string(i) + " of " + recipe.name() +
                                     " needs " + to_string(out.agreement_digits) +
                                     " digits, budget is " + std::to_string(limits.max_digits));
            }
            const Digits prefix = take_prefix(recipe, start, limits.max_digits);
            const Digits block = stage_period_block(recipe, i, limits.max_digits);
            out.value = prefix_then_recurring(prefix, block, recipe.base);
            break;
        }
    }
    out.q_bits = ceil_log2(out.value.denominator());
    return out;
}

VerificationReport verify_liouville_stage(const ConstructionRecipe& recipe, unsigned i,
                                          const StageLimits& limits) {
    const Convergent c = convergent(recipe, i, limits);
    VerificationReport report;
    report.stage = i;
    report.q_bits = c.q_bits;

    // (a) digit agreement over the guaranteed length.
    const std::uint64_t length = to_u64(c.agreement_digits, "agreement length");
    const Digits stream = take_prefix(recipe, length, limits.max_digits);
    const Digits approx = expansion_digits(c.value, recipe.base, length, limits.max_digits);
    const auto mismatch = std::mismatch(stream.begin(), stream.end(), approx.begin());
    report.agreement = static_cast<unsigned long>(mismatch.first - stream.begin());
    report.digits_agree = mismatch.first == stream.end();

    // (b) base^agreement >= 2 q^i, via q <= 2^q_bits.
    report.required = digits_for_bits(recipe.base, std::uint64_t{i} * c.q_bits + 1);
    report.margin_ok = report.digits_agree && report.agreement >= report.required;

    // Tail bounds: psi1 - s_i < 2^{-((i+1)! - 1)},
    //              psi2 - s_i < (i+2) 2^{-((i+1)! - 1)}.
    if (recipe.kind == ConstructionKind::LiouvillePsi1 ||
        recipe.kind == ConstructionKind::DisjunctivePsi2) {
        const BigInt coeff = recipe.kind == ConstructionKind::LiouvillePsi1 ? 1 : i + 2;
        const std::uint64_t exponent = to_u64(factorial(i + 1)) - 1;
        const BigInt q_pow = big_pow(c.value.denominator(), i);
        report.tail_ok = BigInt(coeff * q_pow) <= big_pow(2, exponent);
    }

    if (report.margin_ok) {
        report.certificate = Certificate::DigitMargin;
    } else if (report.digits_agree && report.tail_ok) {
        report.certificate = Certificate::TailBound;
    }
    report.holds = report.certificate != Certificate::None;
    return report;
}

}  // namespace liouville
