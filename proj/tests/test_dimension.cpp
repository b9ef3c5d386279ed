#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "liouville/dimension.hpp"
#include "liouville/errors.hpp"
#include "oracles.hpp"

using namespace liouville;

namespace {

Digits random_digits(std::mt19937_64& rng, std::size_t n, unsigned base) {
    std::uniform_int_distribution<unsigned> d(0, base - 1);
    Digits out(n);
    for (auto& x : out) x = static_cast<std::uint8_t>(d(rng));
    return out;
}

std::map<std::string, std::uint64_t> oracle_counts(const std::string& x, unsigned m, CountMode mode) {
    switch (mode) {
        case CountMode::Sliding: return oracle::sliding_counts(x, m);
        case CountMode::Disjoint: return oracle::disjoint_counts(x, m);
        case CountMode::Cyclic: return oracle::cyclic_counts(x, m);
    }
    return {};
}

}  // namespace

TEST(Dimension, CountOccurrencesExamples) {
    EXPECT_EQ(count_occurrences(from_ascii("11", 2), from_ascii("0111", 2), 2), 2u);
    EXPECT_EQ(count_occurrences(from_ascii("00", 2), from_ascii("0000", 2), 2), 3u);
    EXPECT_EQ(count_occurrences(from_ascii("101", 2), from_ascii("10", 2), 2), 0u);
}

TEST(Dimension, TablesMatchMapOracle) {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 60; ++trial) {
        const unsigned base = 2 + trial % 3;
        const std::size_t n = 1 + rng() % 300;
        const Digits x = random_digits(rng, n, base);
        const std::string text = to_ascii(x);
        for (unsigned m = 1; m <= std::min<std::size_t>(4, n); ++m) {
            for (auto mode : {CountMode::Sliding, CountMode::Disjoint, CountMode::Cyclic}) {
                const auto table = block_frequencies(x, m, mode, base);
                const auto expected = oracle_counts(text, m, mode);
                ASSERT_EQ(table.nonzero(), expected) << text << " m=" << m;
                std::uint64_t total = 0;
                for (const auto& [w, c] : expected) total += c;
                ASSERT_EQ(table.window_total(), total);
                if (total > 0) {
                    ASSERT_NEAR(shannon_entropy(table), oracle::entropy_bits(expected), 1e-12);
                }
            }
        }
    }
}

TEST(Dimension, ParallelCountsEqualSequential) {
    std::mt19937_64 rng(23);
    const Digits x = random_digits(rng, 100003, 2);
    for (unsigned m : {1u, 3u, 7u, 12u}) {
        for (auto mode : {CountMode::Sliding, CountMode::Disjoint, CountMode::Cyclic}) {
            const auto seq = block_frequencies(x, m, mode, 2);
            for (unsigned chunks : {1u, 2u, 5u, 16u}) {
                const auto par = block_frequencies_parallel(x, m, mode, 2, chunks);
                ASSERT_EQ(par.counts(), seq.counts()) << "m=" << m << " chunks=" << chunks;
                ASSERT_EQ(par.window_total(), seq.window_total());
            }
        }
    }
}

TEST(Dimension, StreamingCounterEqualsBatch) {
    std::mt19937_64 rng(29);
    const Digits x = random_digits(rng, 5000, 3);
    for (auto mode : {CountMode::Sliding, CountMode::Disjoint}) {
        BlockCounter counter(3, 4, mode);
        std::size_t pos = 0;
        while (pos < x.size()) {
            const std::size_t step = std::min<std::size_t>(1 + rng() % 97, x.size() - pos);
            counter.feed(DigitView(x).subspan(pos, step));
            pos += step;
        }
        EXPECT_EQ(counter.consumed(), x.size());
        EXPECT_EQ(counter.table().counts(), block_frequencies(x, 4, mode, 3).counts());
    }
}

TEST(Dimension, EntropyBasics) {
    const std::vector<double> uniform{0.25, 0.25, 0.25, 0.25};
    EXPECT_NEAR(shannon_entropy(uniform), 2.0, 1e-15);
    const std::vector<double> point{1.0, 0.0};
    EXPECT_EQ(shannon_entropy(point), 0.0);
    const auto table = block_frequencies(from_ascii("0101", 2), 1, CountMode::Sliding, 2);
    EXPECT_NEAR(normalized_rate(table), 1.0, 1e-15);
    const auto table3 = block_frequencies(from_ascii("012012", 3), 1, CountMode::Sliding, 3);
    EXPECT_NEAR(normalized_rate(table3), 1.0, 1e-15);
}

TEST(Dimension, RatesStayInUnitInterval) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        const unsigned base = 2 + trial % 4;
        const Digits x = random_digits(rng, 50 + rng() % 500, base);
        for (unsigned m = 1; m <= 3; ++m) {
            const double r = normalized_rate(block_frequencies(x, m, CountMode::Sliding, base));
            ASSERT_GE(r, 0.0);
            ASSERT_LE(r, 1.0 + 1e-12);
        }
    }
}

TEST(Dimension, PeriodicDisjointEntropyEqualsOnePeriod) {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t period = 1 + rng() % 64;
        const Digits block = random_digits(rng, period, 2);
        Digits x;
        for (int r = 0; r < 1000; ++r) x.insert(x.end(), block.begin(), block.end());
        const std::string one = to_ascii(block);
        for (unsigned m = 1; m <= 6; ++m) {
            // 1000 periods cut into m-blocks visit each phase of the period equally
            // when m divides 1000 * period evenly over lcm(m, period).
            std::string lcm_text;
            const std::size_t l = std::lcm(period, static_cast<std::size_t>(m));
            for (std::size_t i = 0; i < l / period; ++i) lcm_text += one;
            const double expected = oracle::entropy_bits(oracle::disjoint_counts(lcm_text, m));
            const auto table = block_frequencies(x, m, CountMode::Disjoint, 2);
            if ((1000 * period) % l == 0) {
                ASSERT_NEAR(shannon_entropy(table), expected, 1e-9) << one << " m=" << m;
            }
        }
    }
}

TEST(Dimension, ClosedFormStageEntropy) {
    EXPECT_NEAR(stage_entropy_closed_form(1, 2, 8), 0.6226939674944271, 1e-13);
    for (auto [m, n] : {std::pair{1u, 2u}, {1u, 3u}, {2u, 3u}, {3u, 5u}}) {
        for (unsigned k = 1; k <= 8; ++k) {
            const auto block = stage_period_block(ConstructionRecipe::diluted(m, n), k);
            const auto table = block_frequencies(block, k, CountMode::Cyclic, 2);
            const auto counts = diluted_stage_counts(m, n, k);
            const Digits zeros(k, 0);
            EXPECT_EQ(table.count(zeros), counts.zero_block);
            EXPECT_EQ(table.window_total(), counts.total);
            EXPECT_NEAR(stage_entropy_closed_form(m, n, k), shannon_entropy(table) / k, 1e-12)
                << m << "/" << n << " k=" << k;
        }
    }
}

TEST(Dimension, AlphaProfileExamples) {
    const auto report = entropy_rate_profile(ConstructionRecipe::alpha(), 2, {18, 234});
    EXPECT_EQ(report.samples.size(), 2u * 2u * 2u);
    const RateSample* s = report.find(18, 1, CountMode::Sliding);
    ASSERT_NE(s, nullptr);
    // 010011001100110011: 9 zeros, 9 ones
    EXPECT_NEAR(s->normalized_rate, 1.0, 1e-12);
    const RateSample* s2 = report.find(18, 2, CountMode::Sliding);
    ASSERT_NE(s2, nullptr);
    // 17 windows: 00 x4, 01 x5, 10 x4, 11 x4
    const double h = -(12.0 / 17 * std::log2(4.0 / 17) + 5.0 / 17 * std::log2(5.0 / 17));
    EXPECT_NEAR(s2->normalized_rate, h / 2, 1e-12);
    EXPECT_LE(report.dimension_estimate, report.strong_dimension_estimate);
    EXPECT_EQ(stage_prefix_lengths(ConstructionRecipe::alpha(), 5000),
              (std::vector<std::uint64_t>{2, 18, 234, 4330}));
}

TEST(Dimension, Errors) {
    const Digits x = from_ascii("0101", 2);
    EXPECT_THROW(block_frequencies(x, 0, CountMode::Sliding, 2), InvalidArgument);
    EXPECT_THROW(block_frequencies(Digits(100, 0), 13, CountMode::Sliding, 2), BudgetExceeded);
    EXPECT_THROW(block_frequencies(x, 5, CountMode::Sliding, 2), InvalidArgument);
    EXPECT_EQ(max_block_size(2), 12u);
    const Digits bad{0, 3};
    EXPECT_THROW(block_frequencies(bad, 1, CountMode::Sliding, 2), InvalidArgument);
    EXPECT_THROW(entropy_rate_profile(ConstructionRecipe::alpha(), 2, {100, 50}), InvalidArgument);
    EXPECT_THROW(stage_entropy_closed_form(2, 4, 3), InvalidArgument);
}
