#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "liouville/bigint.hpp"
#include "liouville/digits.hpp"
#include "liouville/exact.hpp"

namespace liouville::artin {

/// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Distinct prime factors by trial division, ascending.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exponent, std::uint64_t modulus);

/// Multiplicative order of a modulo p (a coprime to p).
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t p);

struct PrimitiveRootCertificate {
    std::uint64_t base = 0;
    std::uint64_t prime = 0;
    std::uint64_t order = 0;

    [[nodiscard]] bool is_primitive() const noexcept { return prime > 1 && order == prime - 1; }
};

/// Order of a mod p, found by testing a^{(p-1)/q} != 1 for each prime q | p-1.
/// Throws InvalidArgument if p is not prime or a = 0 (mod p).
PrimitiveRootCertificate is_primitive_root(std::uint64_t a, std::uint64_t p);

/// Primes <= limit having every base as a primitive root, ascending.
/// Rejects bases below 2 and perfect squares.
std::vector<std::uint64_t> find_simultaneous_primes(std::span<const std::uint64_t> bases,
                                                    std::uint64_t limit);

/// First `count` such primes (no upper limit on the search).
std::vector<std::uint64_t> first_simultaneous_primes(std::span<const std::uint64_t> bases,
                                                     std::size_t count);

void validate_bases(std::span<const std::uint64_t> bases);

/// Repeating block of 1/p in base a (length p-1). Requires a primitive root.
Digits period_block(std::uint64_t a, std::uint64_t p);

/// For j in [0, a^k): number of exponents t in [first, first + length) with
/// frac(a^t / p) in [j/a^k, (j+1)/a^k). Requires a primitive mod p and a^k < p.
std::vector<std::uint64_t> orbit_bin_counts(std::uint64_t a, std::uint64_t p, unsigned k,
                                            std::uint64_t first, std::uint64_t length);

/// The window of p consecutive exponents starting at `window_start`.
inline std::vector<std::uint64_t> orbit_bin_counts(std::uint64_t a, std::uint64_t p, unsigned k,
                                                   std::uint64_t window_start) {
    return orbit_bin_counts(a, p, k, window_start, p);
}

/// (a_1...a_n)^{p-1} = 1 (mod p), and for every a_i the residue sets
/// {a_i^k} and {a_i^k (a_1...a_n)^{p-1}} over k = 0..p-1 coincide.
bool verify_orbit_identity(std::span<const std::uint64_t> bases, std::uint64_t p);

/// Parameters of the multi-base construction.
struct GammaRecipe {
    std::vector<std::uint64_t> bases;   // ascending, each >= 2
    std::vector<std::uint64_t> primes;  // p_1 < p_2 < ..., at least stages + 1 of them
    std::vector<std::uint64_t> schedule;  // f(1..stages)
    unsigned stages = 0;

    [[nodiscard]] std::uint64_t product() const;
};

/// f(i) = i (p_i - 1) c_i with c_i >= 1 minimal such that a_1^{c_i (p_i - 1)} >= p_{i+1}.
std::vector<std::uint64_t> default_schedule(std::span<const std::uint64_t> bases,
                                            std::span<const std::uint64_t> primes, unsigned stages);

/// Bases, primes found by search, default schedule unless `schedule` is given.
GammaRecipe make_gamma_recipe(std::vector<std::uint64_t> bases, unsigned stages,
                              std::optional<std::vector<std::uint64_t>> schedule = std::nullopt);

/// Throws InvalidArgument unless every (base, prime) pair is certified and
/// a_1^{f(i)} >= p_{i+1}^i holds for every stage i >= 2.
void validate_gamma_recipe(const GammaRecipe& recipe);

struct GammaStage {
    unsigned index = 0;
    std::uint64_t prime = 0;
    std::uint64_t repetitions = 0;  // f(i)
    BigInt block;                   // P_i = floor(A^{p_i - 1} / p_i)
    ExactRational n_value;          // N(i) = P_i A^{-(p_i - 1)}
    ExactRational shifted_sum;      // S'(i)
    ExactRational term;             // S(i)
    std::uint64_t offset = 0;       // sum_{j<i} f(j)(p_j - 1), in base-A digits
    std::uint64_t end = 0;          // offset + (f(i)+1)(p_i - 1)
};

/// Liouville check of stage I: the approximant is Gamma_{I-1} followed by
/// stage I's block recurring forever.
struct GammaVerification {
    unsigned stage = 0;
    ExactRational approximant;
    std::uint64_t q_bits = 0;
    /// |gamma - approximant| < bound; bound = max(recurrence overshoot, tail).
    ExactRational distance_bound;
    bool holds = false;
};

/// Per-base digit stability of Gamma_I when stage I+1 is added.
struct DigitStability {
    unsigned stage = 0;
    std::uint64_t base = 0;
    std::uint64_t checked_digits = 0;
    bool stable = false;
};

struct GammaBuild {
    GammaRecipe recipe;
    std::vector<GammaStage> stages;
    std::vector<ExactRational> partial_sums;  // Gamma_1 .. Gamma_I
    std::vector<GammaVerification> verification;
    std::vector<DigitStability> stability;
    /// In base A = a_1...a_n every stage is f(i) copies of P_i's block.
    bool product_base_blocks_ok = false;

    [[nodiscard]] bool all_stable() const;
};

GammaBuild build_gamma(const GammaRecipe& recipe);

/// First `count` base-b digits of the last partial sum.
Digits gamma_digits(const GammaBuild& build, unsigned base, std::uint64_t count,
                    std::uint64_t budget = kDefaultDigitBudget);

}  // namespace liouville::artin
