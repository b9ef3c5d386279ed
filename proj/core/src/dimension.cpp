#include "liouville/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "liouville/errors.hpp"

namespace liouville {

namespace {

constexpr std::uint64_t kMaxTableEntries = 4096;

std::uint64_t table_size(unsigned base, unsigned m) {
    if (m == 0) throw InvalidArgument("block size must be >= 1");
    if (m > max_block_size(base)) {
        throw BudgetExceeded("block size " + std::to_string(m) + " over base " + std::to_string(base) +
                             " exceeds the counting cap (max " +
                             std::to_string(max_block_size(base)) + ")");
    }
    return saturating_pow(base, m);
}

std::uint64_t block_key(DigitView block, unsigned base) {
    std::uint64_t key = 0;
    for (auto d : block) key = key * base + d;
    return key;
}

}  // namespace

std::string_view to_string(CountMode mode) {
    switch (mode) {
        case CountMode::Sliding: return "sliding";
        case CountMode::Disjoint: return "disjoint";
        case CountMode::Cyclic: return "cyclic";
    }
    return "?";
}

unsigned max_block_size(unsigned base) {
    check_base(base);
    unsigned m = 0;
    std::uint64_t size = 1;
    while (size * base <= kMaxTableEntries) {
        size *= base;
        ++m;
    }
    return std::max(m, 1u);
}

FrequencyTable::FrequencyTable(unsigned base, unsigned block_size, CountMode mode)
    : base_(base), block_size_(block_size), mode_(mode) {
    check_base(base);
    counts_.assign(table_size(base, block_size), 0);
}

std::uint64_t FrequencyTable::count(DigitView block) const {
    if (block.size() != block_size_) {
        throw InvalidArgument("block length " + std::to_string(block.size()) +
                              " does not match table block size " + std::to_string(block_size_));
    }
    check_alphabet(block, base_, "block");
    return counts_[block_key(block, base_)];
}

double FrequencyTable::frequency(DigitView block) const {
    if (total_ == 0) return 0.0;
    return static_cast<double>(count(block)) / static_cast<double>(total_);
}

std::map<std::string, std::uint64_t> FrequencyTable::nonzero() const {
    std::map<std::string, std::uint64_t> out;
    Digits block(block_size_);
    for (std::uint64_t key = 0; key < counts_.size(); ++key) {
        if (counts_[key] == 0) continue;
        std::uint64_t v = key;
        for (unsigned i = block_size_; i-- > 0;) {
            block[i] = static_cast<std::uint8_t>(v % base_);
            v /= base_;
        }
        out.emplace(to_ascii(block), counts_[key]);
    }
    return out;
}

void FrequencyTable::merge(const FrequencyTable& other) {
    if (other.base_ != base_ || other.block_size_ != block_size_ || other.mode_ != mode_) {
        throw InvalidArgument("cannot merge frequency tables of different shape");
    }
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
    total_ += other.total_;
}

std::uint64_t count_occurrences(DigitView w, DigitView x, unsigned base) {
    check_base(base);
    check_alphabet(w, base, "pattern");
    check_alphabet(x, base, "text");
    if (w.empty()) throw InvalidArgument("pattern must be non-empty");
    if (w.size() > x.size()) return 0;
    std::uint64_t count = 0;
    for (std::size_t i = 0; i + w.size() <= x.size(); ++i) {
        if (std::equal(w.begin(), w.end(), x.begin() + static_cast<std::ptrdiff_t>(i))) ++count;
    }
    return count;
}

BlockCounter::BlockCounter(unsigned base, unsigned m, CountMode mode)
    : table_(base, m, mode), modulus_(saturating_pow(base, m)) {
    if (mode == CountMode::Cyclic) throw InvalidArgument("cyclic counts need the whole string");
}

void BlockCounter::feed(DigitView digits) {
    const unsigned base = table_.base();
    const unsigned m = table_.block_size();
    if (table_.mode() == CountMode::Sliding) {
        for (auto d : digits) {
            key_ = (key_ * base + d) % modulus_;
            if (++seen_ >= m) table_.add(key_);
        }
    } else {
        for (auto d : digits) {
            key_ = key_ * base + d;
            if (++seen_ % m == 0) {
                table_.add(key_);
                key_ = 0;
            }
        }
    }
}

FrequencyTable block_frequencies(DigitView x, unsigned m, CountMode mode, unsigned base) {
    check_alphabet(x, base, "digit string");
    if (m == 0) throw InvalidArgument("block size must be >= 1");
    if (x.size() < m) {
        throw InvalidArgument("string of length " + std::to_string(x.size()) +
                              " is shorter than block size " + std::to_string(m));
    }
    if (mode == CountMode::Cyclic) {
        FrequencyTable table(base, m, mode);
        const std::uint64_t modulus = saturating_pow(base, m);
        const std::size_t n = x.size();
        std::uint64_t key = 0;
        for (unsigned j = 0; j < m; ++j) key = key * base + x[j % n];
        for (std::size_t start = 0; start < n; ++start) {
            table.add(key);
            key = (key * base + x[(start + m) % n]) % modulus;
        }
        return table;
    }
    BlockCounter counter(base, m, mode);
    counter.feed(x);
    return counter.table();
}

FrequencyTable block_frequencies_parallel(DigitView x, unsigned m, CountMode mode, unsigned base,
                                          unsigned chunks) {
    if (chunks <= 1 || mode == CountMode::Cyclic || x.size() < std::uint64_t{chunks} * m * 2) {
        return block_frequencies(x, m, mode, base);
    }
    check_alphabet(x, base, "digit string");
    // Chunk c owns the windows starting in [starts[c], starts[c+1]).
    const std::size_t windows_end = mode == CountMode::Sliding ? x.size() - m + 1 : (x.size() / m) * m;
    std::vector<std::size_t> starts;
    for (unsigned c = 0; c <= chunks; ++c) {
        std::size_t s = windows_end * c / chunks;
        if (mode == CountMode::Disjoint) s -= s % m;
        starts.push_back(c == chunks ? windows_end : s);
    }

    std::vector<FrequencyTable> partial(chunks, FrequencyTable(base, m, mode));
    {
        std::vector<std::jthread> workers;
        for (unsigned c = 0; c < chunks; ++c) {
            workers.emplace_back([&, c] {
                const std::size_t begin = starts[c];
                const std::size_t end = starts[c + 1];
                if (end <= begin) return;
                const std::size_t stop = mode == CountMode::Sliding ? end + m - 1 : end;
                BlockCounter counter(base, m, mode);
                counter.feed(x.subspan(begin, stop - begin));
                partial[c] = counter.table();
            });
        }
    }
    FrequencyTable merged(base, m, mode);
    for (const auto& t : partial) merged.merge(t);
    return merged;
}

double shannon_entropy(const FrequencyTable& table) {
    if (table.window_total() == 0) throw InvalidArgument("entropy of an empty frequency table");
    const long double total = static_cast<long double>(table.window_total());
    long double h = 0;
    for (auto c : table.counts()) {
        if (c == 0) continue;
        const long double p = static_cast<long double>(c) / total;
        h -= p * std::log2(p);
    }
    return static_cast<double>(h);
}

double shannon_entropy(std::span<const double> probabilities) {
    long double h = 0;
    for (double p : probabilities) {
        if (p < 0) throw InvalidArgument("negative probability");
        if (p > 0) h -= static_cast<long double>(p) * std::log2(static_cast<long double>(p));
    }
    return static_cast<double>(h);
}

double normalized_rate(const FrequencyTable& table) {
    return shannon_entropy(table) /
           (static_cast<double>(table.block_size()) * std::log2(static_cast<double>(table.base())));
}

const RateSample* EntropyReport::find(std::uint64_t prefix, unsigned m, CountMode mode) const {
    for (const auto& s : samples) {
        if (s.prefix_length == prefix && s.m == m && s.mode == mode) return &s;
    }
    return nullptr;
}

namespace {

void check_prefixes(const std::vector<std::uint64_t>& prefixes, unsigned m_max) {
    if (m_max == 0) throw InvalidArgument("m-max must be >= 1");
    if (prefixes.empty()) throw InvalidArgument("at least one prefix length is required");
    for (std::size_t i = 0; i < prefixes.size(); ++i) {
        if (prefixes[i] == 0) throw InvalidArgument("prefix lengths must be positive");
        if (i > 0 && prefixes[i] <= prefixes[i - 1]) {
            throw InvalidArgument("prefix lengths must be strictly ascending");
        }
    }
}

// Drives counters for every (m, mode) over a digit source, snapshotting at
// each prefix. `produce(out)` must fill `out` with the next digits.
template <typename Producer>
EntropyReport profile(Producer&& produce, unsigned base, unsigned m_max,
                      std::vector<std::uint64_t> prefixes, std::string source) {
    check_prefixes(prefixes, m_max);
    if (m_max > max_block_size(base)) {
        throw BudgetExceeded("m-max " + std::to_string(m_max) + " exceeds the counting cap " +
                             std::to_string(max_block_size(base)) + " for base " + std::to_string(base));
    }
    EntropyReport report;
    report.source = std::move(source);
    report.base = base;
    report.m_max = m_max;
    report.prefix_lengths = prefixes;

    std::vector<BlockCounter> counters;
    for (unsigned m = 1; m <= m_max; ++m) {
        counters.emplace_back(base, m, CountMode::Sliding);
        counters.emplace_back(base, m, CountMode::Disjoint);
    }

    constexpr std::uint64_t kChunk = std::uint64_t{1} << 20;
    Digits buffer;
    std::uint64_t position = 0;
    for (std::uint64_t target : prefixes) {
        while (position < target) {
            buffer.resize(std::min(kChunk, target - position));
            produce(std::span<std::uint8_t>(buffer));
            for (auto& c : counters) c.feed(buffer);
            position += buffer.size();
        }
        for (const auto& c : counters) {
            const auto& t = c.table();
            if (t.window_total() == 0) continue;
            report.samples.push_back(
                {target, t.block_size(), t.mode(), t.window_total(), shannon_entropy(t), normalized_rate(t)});
        }
    }

    const auto lowest = std::numeric_limits<double>::infinity();
    report.dimension_estimate = report.strong_dimension_estimate = report.sliding_dimension_estimate = lowest;
    for (unsigned m = 1; m <= m_max; ++m) {
        for (CountMode mode : {CountMode::Sliding, CountMode::Disjoint}) {
            RateSummary summary{m, mode, lowest, -lowest};
            for (const auto& s : report.samples) {
                if (s.m != m || s.mode != mode) continue;
                summary.lower_estimate = std::min(summary.lower_estimate, s.normalized_rate);
                summary.upper_estimate = std::max(summary.upper_estimate, s.normalized_rate);
            }
            if (summary.upper_estimate < summary.lower_estimate) continue;  // no samples
            report.summaries.push_back(summary);
            if (mode == CountMode::Disjoint) {
                report.dimension_estimate = std::min(report.dimension_estimate, summary.lower_estimate);
                report.strong_dimension_estimate =
                    std::min(report.strong_dimension_estimate, summary.upper_estimate);
            } else {
                report.sliding_dimension_estimate =
                    std::min(report.sliding_dimension_estimate, summary.lower_estimate);
            }
        }
    }
    for (double* v : {&report.dimension_estimate, &report.strong_dimension_estimate,
                      &report.sliding_dimension_estimate}) {
        if (std::isinf(*v)) *v = 0.0;
    }
    return report;
}

}  // namespace

EntropyReport entropy_rate_profile(const ConstructionRecipe& recipe, unsigned m_max,
                                   std::vector<std::uint64_t> prefix_lengths, std::uint64_t budget) {
    recipe.validate();
    if (!prefix_lengths.empty() && prefix_lengths.back() > budget) {
        throw BudgetExceeded("prefix of " + std::to_string(prefix_lengths.back()) +
                             " digits exceeds budget of " + std::to_string(budget));
    }
    DigitStream stream(recipe);
    return profile([&](std::span<std::uint8_t> out) { stream.read(out); }, recipe.base, m_max,
                   std::move(prefix_lengths), recipe.name());
}

EntropyReport entropy_rate_profile(DigitView digits, unsigned base, unsigned m_max,
                                   std::vector<std::uint64_t> prefix_lengths, std::string source) {
    check_alphabet(digits, base, "digit string");
    if (!prefix_lengths.empty() && prefix_lengths.back() > digits.size()) {
        throw InvalidArgument("prefix length " + std::to_string(prefix_lengths.back()) +
                              " exceeds the " + std::to_string(digits.size()) + " available digits");
    }
    std::size_t offset = 0;
    return profile(
        [&](std::span<std::uint8_t> out) {
            std::copy_n(digits.begin() + static_cast<std::ptrdiff_t>(offset), out.size(), out.begin());
            offset += out.size();
        },
        base, m_max, std::move(prefix_lengths), std::move(source));
}

std::vector<std::uint64_t> stage_prefix_lengths(const ConstructionRecipe& recipe,
                                                std::uint64_t max_length) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 1;; ++i) {
        const BigInt b = stage_boundary(recipe, i);
        if (b > max_length) break;
        out.push_back(to_u64(b));
    }
    return out;
}

double stage_entropy_closed_form(unsigned m, unsigned n, unsigned k) {
    validate_dilution({m, n});
    if (k == 0) throw InvalidArgument("stage index must be >= 1");
    const long double two_k = std::ldexp(1.0L, static_cast<int>(k));
    const long double md = m;
    const long double nd = n;
    const long double other = md / (nd * two_k);
    const long double zero = (nd - md) / nd + md / (nd * two_k);
    const long double bracket =
        other * (two_k - 1) * std::log2(nd * two_k / md) +
        zero * std::log2(nd * two_k / ((nd - md) * two_k + md));
    return static_cast<double>(bracket / k);
}

DilutedStageCounts diluted_stage_counts(unsigned m, unsigned n, unsigned k) {
    validate_dilution({m, n});
    const std::uint64_t two_k = saturating_pow(2, k);
    return {(n - m) * two_k + m, m, n * two_k};
}

}  // namespace liouville
