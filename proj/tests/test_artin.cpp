#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "liouville/artin.hpp"
#include "liouville/errors.hpp"
#include "oracles.hpp"

using namespace liouville;
using namespace liouville::artin;

TEST(Artin, PrimalityAgreesWithTrialDivision) {
    for (std::uint64_t n = 0; n < 20000; ++n) ASSERT_EQ(is_prime(n), oracle::brute_prime(n)) << n;
    EXPECT_TRUE(is_prime(18446744073709551557ull));
    EXPECT_FALSE(is_prime(3215031751ull));  // strong pseudoprime to 2, 3, 5, 7
}

TEST(Artin, FactorsAndOrders) {
    EXPECT_EQ(prime_factors(360), (std::vector<std::uint64_t>{2, 3, 5}));
    EXPECT_EQ(prime_factors(1), std::vector<std::uint64_t>{});
    EXPECT_EQ(pow_mod(2, 10, 1000), 24u);
    EXPECT_EQ(pow_mod(3, 0, 7), 1u);
    for (std::uint64_t p = 3; p < 2000; ++p) {
        if (!oracle::brute_prime(p)) continue;
        for (std::uint64_t a : {2ull, 3ull, 10ull}) {
            if (a % p == 0) continue;
            ASSERT_EQ(multiplicative_order(a, p), oracle::brute_order(a, p)) << a << " mod " << p;
        }
    }
}

TEST(Artin, PrimitiveRootExamples) {
    EXPECT_TRUE(is_primitive_root(2, 13).is_primitive());
    EXPECT_FALSE(is_primitive_root(2, 7).is_primitive());
    EXPECT_EQ(is_primitive_root(2, 7).order, 3u);
    EXPECT_THROW(is_primitive_root(2, 15), InvalidArgument);
    EXPECT_THROW(is_primitive_root(7, 7), InvalidArgument);
}

TEST(Artin, SimultaneousPrimes) {
    const std::vector<std::uint64_t> b23{2, 3};
    EXPECT_EQ(find_simultaneous_primes(b23, 30), (std::vector<std::uint64_t>{5, 19, 29}));
    const std::vector<std::uint64_t> b2{2};
    EXPECT_EQ(find_simultaneous_primes(b2, 20), (std::vector<std::uint64_t>{3, 5, 11, 13, 19}));
    EXPECT_EQ(first_simultaneous_primes(b23, 4), (std::vector<std::uint64_t>{5, 19, 29, 53}));
    // oracle: brute force orders
    const std::vector<std::uint64_t> b235{2, 3, 5};
    std::vector<std::uint64_t> expected;
    for (std::uint64_t p = 2; p < 3000; ++p) {
        if (!oracle::brute_prime(p)) continue;
        bool all = true;
        for (auto a : b235) all = all && a % p != 0 && oracle::brute_order(a, p) == p - 1;
        if (all) expected.push_back(p);
    }
    EXPECT_EQ(find_simultaneous_primes(b235, 3000), expected);
}

TEST(Artin, BaseValidation) {
    const std::vector<std::uint64_t> square{2, 4};
    EXPECT_THROW(find_simultaneous_primes(square, 100), InvalidArgument);
    const std::vector<std::uint64_t> one{1};
    EXPECT_THROW(validate_bases(one), InvalidArgument);
    const std::vector<std::uint64_t> dup{3, 3};
    EXPECT_THROW(validate_bases(dup), InvalidArgument);
    EXPECT_THROW(validate_bases(std::vector<std::uint64_t>{}), InvalidArgument);
}

TEST(Artin, PeriodBlockIsLongDivision) {
    EXPECT_EQ(to_ascii(period_block(2, 13)), "000100111011");
    EXPECT_EQ(to_ascii(period_block(10, 7)), "142857");
    for (std::uint64_t p : {5ull, 11ull, 13ull, 19ull, 29ull, 37ull}) {
        EXPECT_EQ(to_ascii(period_block(2, p)), oracle::long_division(1, mpz_class(p), 2, p - 1));
    }
    EXPECT_THROW(period_block(2, 7), InvalidArgument);
}

TEST(Artin, OrbitBinsAreBalanced) {
    // Count exponents by hand: frac(a^t/p) lies in bin floor((a^t mod p) a^k / p).
    for (std::uint64_t p : {13ull, 19ull, 29ull, 59ull, 61ull}) {
        for (unsigned k = 1; saturating_pow(2, k) < p; ++k) {
            const std::uint64_t bins = saturating_pow(2, k);
            std::vector<std::uint64_t> expected(bins, 0);
            std::uint64_t x = 2 % p;
            for (std::uint64_t t = 1; t <= p - 1; ++t) {
                ++expected[x * bins / p];
                x = x * 2 % p;
            }
            EXPECT_EQ(orbit_bin_counts(2, p, k, 1, p - 1), expected) << p << " k=" << k;
            for (auto c : expected) {
                EXPECT_GE(c, (p - 1) / bins);
                EXPECT_LE(c, (p - 1 + bins - 1) / bins);
            }
        }
    }
}

TEST(Artin, OrbitIdentity) {
    const std::vector<std::uint64_t> b23{2, 3};
    for (auto p : find_simultaneous_primes(b23, 2000)) EXPECT_TRUE(verify_orbit_identity(b23, p)) << p;
}

TEST(Artin, GammaFirstStageLiterals) {
    const auto recipe = make_gamma_recipe({2, 3}, 1, std::vector<std::uint64_t>{2});
    const auto build = build_gamma(recipe);
    ASSERT_EQ(build.stages.size(), 1u);
    const auto& st = build.stages[0];
    EXPECT_EQ(st.prime, 5u);
    EXPECT_EQ(st.block, 259);
    EXPECT_EQ(st.n_value, ExactRational(259, 1296));
    // S'(1) = N(1) (6^{-4} + 6^{-8})
    const ExactRational n = st.n_value;
    const ExactRational expected = n * (inverse_power(6, 4) + inverse_power(6, 8));
    EXPECT_EQ(st.shifted_sum, expected);
    EXPECT_EQ(st.term, expected);
}

TEST(Artin, GammaDefaultSchedule) {
    const auto recipe = make_gamma_recipe({2, 3}, 3);
    EXPECT_EQ(recipe.primes, (std::vector<std::uint64_t>{5, 19, 29, 53}));
    EXPECT_EQ(recipe.schedule, (std::vector<std::uint64_t>{8, 36, 84}));
    EXPECT_EQ(recipe.product(), 6u);
    const auto build = build_gamma(recipe);
    for (const auto& v : build.verification) {
        if (v.stage >= 2) {
            EXPECT_TRUE(v.holds) << v.stage;
            // independent recheck of bound < 1/q^I
            const ExactRational target(1, big_pow(v.approximant.denominator(), v.stage));
            EXPECT_LE(v.distance_bound, target);
        }
    }
    EXPECT_TRUE(build.product_base_blocks_ok);
    EXPECT_EQ(build.stability.size(), 3u * 2u);
    EXPECT_TRUE(build.all_stable());
    // partial sums strictly increase and stay in (0, 1)
    for (std::size_t i = 1; i < build.partial_sums.size(); ++i) {
        EXPECT_LT(build.partial_sums[i - 1], build.partial_sums[i]);
        EXPECT_LT(build.partial_sums[i], ExactRational(1, 1));
    }
}

TEST(Artin, GammaScheduleChecks) {
    EXPECT_THROW(make_gamma_recipe({2, 3}, 2, std::vector<std::uint64_t>{8, 1}), InvalidArgument);
    EXPECT_THROW(make_gamma_recipe({2, 3}, 2, std::vector<std::uint64_t>{8}), InvalidArgument);
    EXPECT_THROW(make_gamma_recipe({2, 4}, 2), InvalidArgument);
    EXPECT_THROW(make_gamma_recipe({2, 3}, 0), InvalidArgument);
}
