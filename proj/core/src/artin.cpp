#include "liouville/artin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "liouville/errors.hpp"

namespace liouville::artin {

namespace {

__extension__ typedef unsigned __int128 u128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

bool is_perfect_square(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r * r == n;
}

// Smallest e with base^e >= value (base >= 2).
std::uint64_t digits_to_reach(std::uint64_t base, const BigInt& value) {
    std::uint64_t e = 0;
    BigInt power = 1;
    while (power < value) {
        power *= base;
        ++e;
    }
    return e;
}

}  // namespace

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exponent, std::uint64_t modulus) {
    if (modulus == 1) return 0;
    std::uint64_t result = 1;
    base %= modulus;
    while (exponent > 0) {
        if (exponent & 1) result = mul_mod(result, base, modulus);
        base = mul_mod(base, base, modulus);
        exponent >>= 1;
    }
    return result;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    static constexpr std::uint64_t kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (auto p : kWitnesses) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (auto a : kWitnesses) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t q = 2; q <= n / q; ++q) {
        if (n % q != 0) continue;
        out.push_back(q);
        while (n % q == 0) n /= q;
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t p) {
    std::uint64_t order = p - 1;
    for (auto q : prime_factors(p - 1)) {
        while (order % q == 0 && pow_mod(a, order / q, p) == 1) order /= q;
    }
    return order;
}

PrimitiveRootCertificate is_primitive_root(std::uint64_t a, std::uint64_t p) {
    if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
    if (a % p == 0) {
        throw InvalidArgument(std::to_string(a) + " is divisible by " + std::to_string(p));
    }
    return {a, p, multiplicative_order(a, p)};
}

void validate_bases(std::span<const std::uint64_t> bases) {
    if (bases.empty()) throw InvalidArgument("at least one base is required");
    for (std::size_t i = 0; i < bases.size(); ++i) {
        const auto a = bases[i];
        if (a < 2) throw InvalidArgument("base " + std::to_string(a) + " must be >= 2");
        if (is_perfect_square(a)) {
            throw InvalidArgument("base " + std::to_string(a) +
                                  " is a perfect square and is never a primitive root of an odd prime");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (bases[j] == a) throw InvalidArgument("bases must be distinct");
        }
    }
}

namespace {

bool all_primitive(std::span<const std::uint64_t> bases, std::uint64_t p) {
    for (auto a : bases) {
        if (a % p == 0 || multiplicative_order(a, p) != p - 1) return false;
    }
    return true;
}

}  // namespace

std::vector<std::uint64_t> find_simultaneous_primes(std::span<const std::uint64_t> bases,
                                                    std::uint64_t limit) {
    validate_bases(bases);
    constexpr std::uint64_t kSieveCap = std::uint64_t{1} << 32;
    if (limit > kSieveCap) {
        throw BudgetExceeded("prime search limit " + std::to_string(limit) + " exceeds " +
                             std::to_string(kSieveCap));
    }
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = 2; n <= limit; ++n) {
        if (composite[n]) continue;
        for (std::uint64_t m = n * n; m <= limit; m += n) composite[m] = true;
        if (all_primitive(bases, n)) out.push_back(n);
    }
    return out;
}

std::vector<std::uint64_t> first_simultaneous_primes(std::span<const std::uint64_t> bases,
                                                     std::size_t count) {
    validate_bases(bases);
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = 2; out.size() < count; ++n) {
        if (n == std::numeric_limits<std::uint32_t>::max()) {
            throw BudgetExceeded("no further simultaneous primes below 2^32");
        }
        if (is_prime(n) && all_primitive(bases, n)) out.push_back(n);
    }
    return out;
}

Digits period_block(std::uint64_t a, std::uint64_t p) {
    const auto cert = is_primitive_root(a, p);
    if (!cert.is_primitive()) {
        throw InvalidArgument(std::to_string(a) + " is not a primitive root of " + std::to_string(p));
    }
    if (a > kMaxBase) throw InvalidArgument("period_block supports bases up to 36");
    Digits out;
    out.reserve(p - 1);
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i + 1 < p; ++i) {
        const u128 scaled = static_cast<u128>(r) * a;
        out.push_back(static_cast<std::uint8_t>(scaled / p));
        r = static_cast<std::uint64_t>(scaled % p);
    }
    return out;
}

std::vector<std::uint64_t> orbit_bin_counts(std::uint64_t a, std::uint64_t p, unsigned k,
                                            std::uint64_t first, std::uint64_t length) {
    const auto cert = is_primitive_root(a, p);
    if (!cert.is_primitive()) {
        throw InvalidArgument(std::to_string(a) + " is not a primitive root of " + std::to_string(p));
    }
    const std::uint64_t bins = saturating_pow(a, k);
    if (bins >= p) {
        throw InvalidArgument("orbit bins need a^k < p (a=" + std::to_string(a) + ", k=" +
                              std::to_string(k) + ", p=" + std::to_string(p) + ")");
    }
    std::vector<std::uint64_t> counts(bins, 0);
    std::uint64_t r = pow_mod(a, first, p);
    for (std::uint64_t t = 0; t < length; ++t) {
        // frac(a^t / p) = r / p lies in bin floor(r a^k / p).
        counts[static_cast<std::size_t>(static_cast<u128>(r) * bins / p)] += 1;
        r = mul_mod(r, a, p);
    }
    return counts;
}

bool verify_orbit_identity(std::span<const std::uint64_t> bases, std::uint64_t p) {
    if (!is_prime(p)) return false;
    std::uint64_t product = 1;
    for (auto a : bases) product = mul_mod(product, a % p, p);
    if (product == 0) return false;
    const std::uint64_t shift = pow_mod(product, p - 1, p);
    if (shift != 1) return false;

    std::vector<bool> plain(p, false);
    std::vector<bool> shifted(p, false);
    for (auto a : bases) {
        std::fill(plain.begin(), plain.end(), false);
        std::fill(shifted.begin(), shifted.end(), false);
        std::uint64_t power = 1;
        for (std::uint64_t k = 0; k < p; ++k) {
            plain[power] = true;
            shifted[mul_mod(power, shift, p)] = true;
            power = mul_mod(power, a % p, p);
        }
        if (plain != shifted) return false;
    }
    return true;
}

std::uint64_t GammaRecipe::product() const {
    std::uint64_t a = 1;
    for (auto b : bases) {
        if (b != 0 && a > std::numeric_limits<std::uint64_t>::max() / b) {
            throw InvalidArgument("product of bases overflows 64 bits");
        }
        a *= b;
    }
    return a;
}

std::vector<std::uint64_t> default_schedule(std::span<const std::uint64_t> bases,
                                            std::span<const std::uint64_t> primes, unsigned stages) {
    if (bases.empty()) throw InvalidArgument("at least one base is required");
    if (primes.size() < std::size_t{stages} + 1) {
        throw InvalidArgument("default schedule needs " + std::to_string(stages + 1) + " primes");
    }
    const std::uint64_t a1 = *std::min_element(bases.begin(), bases.end());
    std::vector<std::uint64_t> f;
    for (unsigned i = 1; i <= stages; ++i) {
        const std::uint64_t period = primes[i - 1] - 1;
        // c = ceil(log_{a1}(p_{i+1}) / (p_i - 1)), at least 1.
        const std::uint64_t reach = digits_to_reach(a1, BigInt(static_cast<unsigned long>(primes[i])));
        const std::uint64_t c = std::max<std::uint64_t>(1, (reach + period - 1) / period);
        f.push_back(std::uint64_t{i} * period * c);
    }
    return f;
}

GammaRecipe make_gamma_recipe(std::vector<std::uint64_t> bases, unsigned stages,
                              std::optional<std::vector<std::uint64_t>> schedule) {
    validate_bases(bases);
    if (stages == 0) throw InvalidArgument("gamma needs at least one stage");
    std::sort(bases.begin(), bases.end());
    GammaRecipe recipe;
    recipe.primes = first_simultaneous_primes(bases, std::size_t{stages} + 1);
    recipe.schedule = schedule ? std::move(*schedule) : default_schedule(bases, recipe.primes, stages);
    recipe.bases = std::move(bases);
    recipe.stages = stages;
    validate_gamma_recipe(recipe);
    return recipe;
}

void validate_gamma_recipe(const GammaRecipe& recipe) {
    validate_bases(recipe.bases);
    if (!std::is_sorted(recipe.bases.begin(), recipe.bases.end())) {
        throw InvalidArgument("gamma bases must be ascending");
    }
    if (recipe.stages == 0) throw InvalidArgument("gamma needs at least one stage");
    if (recipe.primes.size() < std::size_t{recipe.stages} + 1) {
        throw InvalidArgument("gamma with " + std::to_string(recipe.stages) + " stages needs " +
                              std::to_string(recipe.stages + 1) + " primes");
    }
    if (recipe.schedule.size() != recipe.stages) {
        throw InvalidArgument("schedule must give f(i) for each of the " +
                              std::to_string(recipe.stages) + " stages");
    }
    for (std::size_t i = 0; i < recipe.primes.size(); ++i) {
        if (i > 0 && recipe.primes[i] <= recipe.primes[i - 1]) {
            throw InvalidArgument("gamma primes must be strictly ascending");
        }
        for (auto a : recipe.bases) {
            if (!is_primitive_root(a, recipe.primes[i]).is_primitive()) {
                throw InvalidArgument(std::to_string(a) + " is not a primitive root of " +
                                      std::to_string(recipe.primes[i]));
            }
        }
    }
    const std::uint64_t a1 = recipe.bases.front();
    for (unsigned i = 1; i <= recipe.stages; ++i) {
        const std::uint64_t f = recipe.schedule[i - 1];
        if (f == 0) throw InvalidArgument("schedule entries must be positive");
        if (i < 2) continue;
        // a_1^{f(i)} >= p_{i+1}^i, i.e. f(i) >= i log_{a_1} p_{i+1}.
        if (big_pow(a1, f) < big_pow(BigInt(static_cast<unsigned long>(recipe.primes[i])), i)) {
            throw InvalidArgument("schedule violates the sufficiency condition at stage " +
                                  std::to_string(i) + ": f(" + std::to_string(i) + ") = " +
                                  std::to_string(f) + " is too small");
        }
    }
}

bool GammaBuild::all_stable() const {
    return std::all_of(stability.begin(), stability.end(), [](const auto& s) { return s.stable; });
}

namespace {

// Largest d with base^d <= A^exponent.
std::uint64_t digits_within(std::uint64_t base, std::uint64_t product, std::uint64_t exponent) {
    const BigInt limit = big_pow(product, exponent);
    auto d = static_cast<std::uint64_t>(static_cast<double>(exponent) * std::log(double(product)) /
                                        std::log(double(base)));
    d = d > 2 ? d - 2 : 0;
    BigInt power = big_pow(base, d);
    while (power * base <= limit) {
        power *= base;
        ++d;
    }
    while (d > 0 && power > limit) {
        power /= base;
        --d;
    }
    return d;
}

}  // namespace

GammaBuild build_gamma(const GammaRecipe& recipe) {
    validate_gamma_recipe(recipe);
    const std::uint64_t a = recipe.product();
    GammaBuild build;
    build.recipe = recipe;

    std::vector<ExactRational> tail_bounds;
    ExactRational gamma(BigInt(0), BigInt(1));
    std::uint64_t offset = 0;
    for (unsigned i = 1; i <= recipe.stages; ++i) {
        GammaStage st;
        st.index = i;
        st.prime = recipe.primes[i - 1];
        st.repetitions = recipe.schedule[i - 1];
        st.offset = offset;
        const std::uint64_t period = st.prime - 1;
        const BigInt shift = big_pow(a, period);  // A^{p_i - 1}
        st.block = shift / static_cast<unsigned long>(st.prime);
        st.n_value = ExactRational(st.block, shift);

        // S'(i) = P_i sum_{t=1..f} A^{-(t+1)(p_i-1)} ... written over A^{(f+1)(p_i-1)}:
        // numerator P_i (A^{f(p_i-1)} - 1) / (A^{p_i-1} - 1).
        const BigInt repeat = (big_pow(shift, st.repetitions) - 1) / BigInt(shift - 1);
        const std::uint64_t span = (st.repetitions + 1) * period;
        st.shifted_sum = ExactRational(BigInt(st.block * repeat), big_pow(a, span));
        st.term = ExactRational(BigInt(st.block * repeat), big_pow(a, offset + span));
        st.end = offset + span;

        // Keep partial sums over the power A^{end}.
        const BigInt scale = big_pow(a, st.end) / gamma.denominator();
        gamma = ExactRational(BigInt(gamma.numerator() * scale + st.block * repeat), big_pow(a, st.end));

        // Approximant: Gamma_{i-1} then P_i's block recurring forever.
        const std::uint64_t head = offset + period;
        // Gamma_{i-1} lives over A^{end_{i-1}} with end_{i-1} <= head, so the
        // common denominator is A^{head} (A^{p_i-1} - 1).
        BigInt approx_num = st.block;
        if (!build.partial_sums.empty()) {
            const ExactRational& previous = build.partial_sums.back();
            approx_num += previous.numerator() * (big_pow(a, head) / previous.denominator()) * (shift - 1);
        }
        const ExactRational approximant(std::move(approx_num), BigInt(big_pow(a, head) * (shift - 1)));
        // Overshoot of the recurrence past the f(i) copies actually placed.
        const ExactRational overshoot(st.block, BigInt(big_pow(a, st.end) * (shift - 1)));
        // Every later stage j has S_j < A^{-(offset_j + p_j - 1)} and these
        // exponents grow by >= 1, so the tail is below 2 A^{-t}.
        const std::uint64_t t = offset + st.repetitions * period + (recipe.primes[i] - 1);
        const ExactRational tail(BigInt(2), big_pow(a, t));
        tail_bounds.push_back(tail);

        GammaVerification v;
        v.stage = i;
        v.approximant = approximant;
        v.q_bits = ceil_log2(approximant.denominator());
        v.distance_bound = std::max(overshoot, tail);
        const BigInt q_pow = big_pow(approximant.denominator(), i);
        // bound <= 1 / q^i
        v.holds = v.distance_bound.numerator() * q_pow <= v.distance_bound.denominator();
        build.verification.push_back(std::move(v));

        build.partial_sums.push_back(gamma);
        build.stages.push_back(std::move(st));
        offset += recipe.schedule[i - 1] * period;
    }

    // Base A: the last f(i)(p_i - 1) digits of stage i's slot are f(i) copies
    // of P_i's block. The slot's first p_i - 1 digits are shared with the
    // final copy of stage i-1.
    build.product_base_blocks_ok = true;
    for (const auto& st : build.stages) {
        const std::uint64_t period = st.prime - 1;
        BigInt window = gamma.numerator() * big_pow(a, st.end) / gamma.denominator();
        window %= big_pow(a, st.repetitions * period);
        const BigInt repeat = (big_pow(a, st.repetitions * period) - 1) / BigInt(big_pow(a, period) - 1);
        if (window != st.block * repeat) build.product_base_blocks_ok = false;
    }

    // Digits of Gamma_i up to stage i's end are final if they survive adding
    // the largest possible tail.
    for (std::size_t idx = 0; idx < build.stages.size(); ++idx) {
        const auto& st = build.stages[idx];
        const ExactRational& low = build.partial_sums[idx];
        const ExactRational high = low + tail_bounds[idx];
        for (auto b : recipe.bases) {
            DigitStability s;
            s.stage = st.index;
            s.base = b;
            if (b > kMaxBase) {
                s.checked_digits = 0;
                s.stable = false;
                build.stability.push_back(s);
                continue;
            }
            s.checked_digits = digits_within(b, a, st.end);
            const bool high_below_one = high.numerator() < high.denominator();
            s.stable = high_below_one &&
                       expansion_digits(low, static_cast<unsigned>(b), s.checked_digits) ==
                           expansion_digits(high, static_cast<unsigned>(b), s.checked_digits);
            build.stability.push_back(s);
        }
    }
    return build;
}

Digits gamma_digits(const GammaBuild& build, unsigned base, std::uint64_t count, std::uint64_t budget) {
    if (build.partial_sums.empty()) throw InvalidArgument("gamma build has no stages");
    return expansion_digits(build.partial_sums.back(), base, count, budget);
}

}  // namespace liouville::artin
