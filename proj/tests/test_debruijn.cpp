#include <gtest/gtest.h>

#include "liouville/debruijn.hpp"
#include "liouville/errors.hpp"
#include "oracles.hpp"

using namespace liouville;

TEST(DeBruijn, SmallOrdersMatchExhaustiveSearch) {
    EXPECT_EQ(to_ascii(generate_debruijn(2, 1).digits), "01");
    EXPECT_EQ(to_ascii(generate_debruijn(2, 3).digits), "00010111");
    for (auto [k, n] : {std::pair{2u, 1u}, {2u, 2u}, {2u, 3u}, {2u, 4u}, {3u, 1u}, {3u, 2u}, {4u, 2u}}) {
        EXPECT_EQ(to_ascii(generate_debruijn(k, n).digits), oracle::least_debruijn(k, n))
            << "k=" << k << " n=" << n;
    }
}

TEST(DeBruijn, LengthIsKToTheN) {
    EXPECT_EQ(generate_debruijn(2, 4).size(), 16u);
    EXPECT_EQ(generate_debruijn(3, 5).size(), 243u);
    EXPECT_EQ(generate_debruijn(5, 3).size(), 125u);
}

TEST(DeBruijn, Deterministic) {
    EXPECT_EQ(generate_debruijn(3, 6), generate_debruijn(3, 6));
}

TEST(DeBruijn, EveryWindowOnceAndShorterWindowsEvenly) {
    for (unsigned k = 2; k <= 4; ++k) {
        for (unsigned n = 1; n <= 5; ++n) {
            const auto seq = generate_debruijn(k, n);
            const std::string text = to_ascii(seq.digits);
            for (unsigned m = 1; m <= n; ++m) {
                std::uint64_t expected = 1;
                for (unsigned e = m; e < n; ++e) expected *= k;
                for (const auto& w : oracle::all_words(k, m)) {
                    ASSERT_EQ(cyclic_occurrences(seq, from_ascii(w, k)), expected)
                        << "k=" << k << " n=" << n << " w=" << w;
                    ASSERT_EQ(oracle::cyclic_count(text, w), expected);
                }
            }
        }
    }
}

TEST(DeBruijn, CyclicOccurrenceExamples) {
    const auto b23 = generate_debruijn(2, 3);
    EXPECT_EQ(cyclic_occurrences(b23, from_ascii("11", 2)), 2u);
    EXPECT_EQ(cyclic_occurrences(b23, from_ascii("101", 2)), 1u);
    // "100" only exists across the wrap-around: ...1 | 00...
    EXPECT_EQ(cyclic_occurrences(b23, from_ascii("100", 2)), 1u);
    EXPECT_EQ(cyclic_occurrences(generate_debruijn(2, 1), from_ascii("0", 2)), 1u);
}

TEST(DeBruijn, Errors) {
    EXPECT_THROW(generate_debruijn(1, 3), InvalidArgument);
    EXPECT_THROW(generate_debruijn(2, 0), InvalidArgument);
    EXPECT_THROW(generate_debruijn(2, 20, 1000), BudgetExceeded);
    const auto b = generate_debruijn(2, 2);
    const Digits bad{0, 2};
    EXPECT_THROW(cyclic_occurrences(b, bad), InvalidArgument);
    EXPECT_THROW(cyclic_occurrences(b, Digits{}), InvalidArgument);
}
