#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "liouville/constructions.hpp"
#include "liouville/digits.hpp"

namespace liouville {

/// How length-m windows are taken from a string of length N.
enum class CountMode {
    Sliding,   // N - m + 1 overlapping windows
    Disjoint,  // floor(N / m) consecutive blocks
    Cyclic,    // N overlapping windows, wrapping around the end
};
std::string_view to_string(CountMode mode);

/// Largest block size whose table (base^m entries) fits the counting cap;
/// 12 for binary.
unsigned max_block_size(unsigned base);

/// Counts of every length-m block, indexed by the block read as a base-k
/// integer (most significant digit first).
class FrequencyTable {
public:
    FrequencyTable(unsigned base, unsigned block_size, CountMode mode);

    [[nodiscard]] unsigned base() const noexcept { return base_; }
    [[nodiscard]] unsigned block_size() const noexcept { return block_size_; }
    [[nodiscard]] CountMode mode() const noexcept { return mode_; }
    [[nodiscard]] std::uint64_t window_total() const noexcept { return total_; }
    [[nodiscard]] const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }

    [[nodiscard]] std::uint64_t count(DigitView block) const;
    [[nodiscard]] double frequency(DigitView block) const;
    /// Non-zero entries keyed by ASCII block.
    [[nodiscard]] std::map<std::string, std::uint64_t> nonzero() const;

    void add(std::uint64_t key, std::uint64_t times = 1) {
        counts_[key] += times;
        total_ += times;
    }
    /// Exact count addition; tables must share base, block size and mode.
    void merge(const FrequencyTable& other);

private:
    unsigned base_;
    unsigned block_size_;
    CountMode mode_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t total_ = 0;
};

/// Linear (non-cyclic) sliding occurrences of w in x.
std::uint64_t count_occurrences(DigitView w, DigitView x, unsigned base);

FrequencyTable block_frequencies(DigitView x, unsigned m, CountMode mode, unsigned base);

/// Splits x into `chunks` pieces counted independently (sliding chunks overlap
/// by m-1 symbols) and merges. Identical to block_frequencies.
FrequencyTable block_frequencies_parallel(DigitView x, unsigned m, CountMode mode, unsigned base,
                                          unsigned chunks);

/// Streaming counter for one block size; feed digits in order, snapshot any time.
class BlockCounter {
public:
    BlockCounter(unsigned base, unsigned m, CountMode mode);
    void feed(DigitView digits);
    [[nodiscard]] const FrequencyTable& table() const noexcept { return table_; }
    [[nodiscard]] std::uint64_t consumed() const noexcept { return seen_; }

private:
    FrequencyTable table_;
    std::uint64_t modulus_;
    std::uint64_t key_ = 0;
    std::uint64_t seen_ = 0;
};

/// Shannon entropy in bits of the table's empirical distribution; 0 log 0 = 0.
double shannon_entropy(const FrequencyTable& table);
/// Shannon entropy in bits of a probability vector.
double shannon_entropy(std::span<const double> probabilities);
/// Entropy per symbol in log base k, so it lies in [0, 1].
double normalized_rate(const FrequencyTable& table);

struct RateSample {
    std::uint64_t prefix_length = 0;
    unsigned m = 0;
    CountMode mode = CountMode::Sliding;
    std::uint64_t windows = 0;
    double entropy_bits = 0.0;
    double normalized_rate = 0.0;
};

/// Min/max of the sampled normalized rates for one (m, mode). These are
/// finite-data estimates of the liminf/limsup rates, not the limits.
struct RateSummary {
    unsigned m = 0;
    CountMode mode = CountMode::Sliding;
    double lower_estimate = 0.0;
    double upper_estimate = 0.0;
};

struct EntropyReport {
    std::string source;
    unsigned base = 2;
    unsigned m_max = 0;
    std::vector<std::uint64_t> prefix_lengths;
    std::vector<RateSample> samples;
    std::vector<RateSummary> summaries;
    /// min over m of the lower estimate, per mode. Estimates only.
    double dimension_estimate = 0.0;          // disjoint blocks
    double strong_dimension_estimate = 0.0;   // disjoint blocks, upper rates
    double sliding_dimension_estimate = 0.0;  // sliding blocks

    [[nodiscard]] const RateSample* find(std::uint64_t prefix, unsigned m, CountMode mode) const;
};

/// Normalized block-entropy rates of the recipe's prefixes, m = 1..m_max,
/// both sliding and disjoint. prefix_lengths must be ascending.
EntropyReport entropy_rate_profile(const ConstructionRecipe& recipe, unsigned m_max,
                                   std::vector<std::uint64_t> prefix_lengths,
                                   std::uint64_t budget = kDefaultDigitBudget);

/// Same, over an explicit digit string (e.g. read from a file).
EntropyReport entropy_rate_profile(DigitView digits, unsigned base, unsigned m_max,
                                   std::vector<std::uint64_t> prefix_lengths, std::string source);

/// End-of-stage boundaries b_1, b_2, ... up to `max_length`.
std::vector<std::uint64_t> stage_prefix_lengths(const ConstructionRecipe& recipe,
                                                std::uint64_t max_length);

/// (1/k) [ (m/(n2^k)) (2^k-1) log(n2^k/m) + ((n-m)/n + m/(n2^k)) log(n2^k/((n-m)2^k+m)) ],
/// the k-block entropy rate of one stage-k period of the m/n diluted sequence.
double stage_entropy_closed_form(unsigned m, unsigned n, unsigned k);

/// Cyclic k-block counts in one stage-k period of the diluted sequence:
/// 0^k occurs (n-m)2^k + m times, every other block m times.
struct DilutedStageCounts {
    std::uint64_t zero_block = 0;
    std::uint64_t other_block = 0;
    std::uint64_t total = 0;
};
DilutedStageCounts diluted_stage_counts(unsigned m, unsigned n, unsigned k);

}  // namespace liouville
