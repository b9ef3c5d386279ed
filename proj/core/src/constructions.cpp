#include "liouville/constructions.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "liouville/errors.hpp"

namespace liouville {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
    return a > kSaturated - b ? kSaturated : a + b;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > kSaturated / a) return kSaturated;
    return a * b;
}

// Length (in base-k digits) of stage i, saturating.
std::uint64_t stage_length_u64(const ConstructionRecipe& r, std::uint64_t i) {
    switch (r.kind) {
        case ConstructionKind::NormalAlpha:
            return saturating_mul(saturating_pow(i, i), saturating_pow(r.base, i));
        case ConstructionKind::DilutedAlpha:
            return saturating_mul(r.dilution->n,
                                  saturating_mul(saturating_pow(i, i), saturating_pow(r.base, i)));
        default:
            break;
    }
    throw std::logic_error("stage_length_u64: factorial constructions have no stage length");
}

std::uint64_t factorial_u64(std::uint64_t n) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 2; i <= n; ++i) r = saturating_mul(r, i);
    return r;
}

}  // namespace

Dilution parse_dilution(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        throw InvalidArgument("dilution must be written M/N, got '" + std::string(text) + "'");
    }
    auto parse = [&](std::string_view part) {
        unsigned v = 0;
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (ec != std::errc{} || ptr != part.data() + part.size() || part.empty()) {
            throw InvalidArgument("dilution must be written M/N, got '" + std::string(text) + "'");
        }
        return v;
    };
    Dilution d{parse(text.substr(0, slash)), parse(text.substr(slash + 1))};
    validate_dilution(d);
    return d;
}

void validate_dilution(const Dilution& d) {
    if (d.m == 0 || d.m >= d.n) {
        throw InvalidArgument("dilution M/N requires 0 < M < N, got " + std::to_string(d.m) + "/" +
                              std::to_string(d.n));
    }
    if (std::gcd(d.m, d.n) != 1) throw InvalidArgument("dilution must be in lowest terms");
}

void ConstructionRecipe::validate() const {
    check_base(base);
    switch (kind) {
        case ConstructionKind::LiouvillePsi1:
        case ConstructionKind::DisjunctivePsi2:
            if (base != 2) throw InvalidArgument(std::string(to_string(kind)) + " is defined in base 2 only");
            if (dilution) throw InvalidArgument("dilution only applies to the diluted construction");
            break;
        case ConstructionKind::NormalAlpha:
            if (dilution) throw InvalidArgument("dilution only applies to the diluted construction");
            break;
        case ConstructionKind::DilutedAlpha:
            if (!dilution) throw InvalidArgument("diluted construction requires a dilution M/N");
            validate_dilution(*dilution);
            break;
    }
}

std::string ConstructionRecipe::name() const {
    std::string out(to_string(kind));
    if (dilution) out += "(" + std::to_string(dilution->m) + "/" + std::to_string(dilution->n) + ")";
    if (base != 2) out += "[base=" + std::to_string(base) + "]";
    return out;
}

ConstructionKind parse_construction_kind(std::string_view text) {
    if (text == "psi1") return ConstructionKind::LiouvillePsi1;
    if (text == "psi2") return ConstructionKind::DisjunctivePsi2;
    if (text == "alpha") return ConstructionKind::NormalAlpha;
    if (text == "diluted") return ConstructionKind::DilutedAlpha;
    throw InvalidArgument("unknown construction '" + std::string(text) +
                          "' (expected psi1, psi2, alpha or diluted)");
}

std::string_view to_string(ConstructionKind kind) {
    switch (kind) {
        case ConstructionKind::LiouvillePsi1: return "psi1";
        case ConstructionKind::DisjunctivePsi2: return "psi2";
        case ConstructionKind::NormalAlpha: return "alpha";
        case ConstructionKind::DilutedAlpha: return "diluted";
    }
    return "?";
}

BigInt stage_boundary(const ConstructionRecipe& recipe, std::uint64_t i) {
    recipe.validate();
    if (i == 0) return 0;
    switch (recipe.kind) {
        case ConstructionKind::LiouvillePsi1:
        case ConstructionKind::DisjunctivePsi2:
            return factorial(i);
        case ConstructionKind::NormalAlpha:
        case ConstructionKind::DilutedAlpha: {
            BigInt sum = 0;
            for (std::uint64_t j = 1; j <= i; ++j) sum += big_pow(j, j) * big_pow(recipe.base, j);
            if (recipe.kind == ConstructionKind::DilutedAlpha) sum *= recipe.dilution->n;
            return sum;
        }
    }
    return 0;
}

StageSchedule::StageSchedule(ConstructionRecipe recipe, std::uint64_t last_stage)
    : recipe_(std::move(recipe)) {
    recipe_.validate();
    boundaries_.reserve(last_stage + 1);
    for (std::uint64_t i = 0; i <= last_stage; ++i) boundaries_.push_back(stage_boundary(recipe_, i));
}

const BigInt& StageSchedule::boundary(std::uint64_t i) const {
    if (i >= boundaries_.size()) {
        throw InvalidArgument("stage " + std::to_string(i) + " beyond schedule (last stage " +
                              std::to_string(last_stage()) + ")");
    }
    return boundaries_[i];
}

Digits stage_period_block(const ConstructionRecipe& recipe, unsigned i, std::uint64_t max_symbols) {
    recipe.validate();
    if (i == 0) throw InvalidArgument("stages are numbered from 1");
    if (recipe.kind != ConstructionKind::NormalAlpha && recipe.kind != ConstructionKind::DilutedAlpha) {
        throw InvalidArgument("only alpha and diluted constructions have a period block");
    }
    DeBruijnSequence b = generate_debruijn(recipe.base, i, max_symbols);
    if (recipe.kind == ConstructionKind::NormalAlpha) return std::move(b.digits);

    const auto [m, n] = *recipe.dilution;
    const std::uint64_t block = b.size();
    if (saturating_mul(n, block) > max_symbols) {
        throw BudgetExceeded("stage " + std::to_string(i) + " period block exceeds symbol cap");
    }
    Digits out(static_cast<std::size_t>((n - m) * block), 0);
    out.reserve(n * block);
    for (unsigned c = 0; c < m; ++c) out.insert(out.end(), b.digits.begin(), b.digits.end());
    return out;
}

DigitStream::DigitStream(ConstructionRecipe recipe, std::uint64_t max_symbols)
    : recipe_(std::move(recipe)), max_symbols_(max_symbols), bounds_{0} {
    recipe_.validate();
    if (recipe_.kind == ConstructionKind::DisjunctivePsi2) {
        // The numeral of i (ending at position i!-1) must start after stage i-1.
        for (std::uint64_t i = 3; i <= 20; ++i) {
            const auto width = static_cast<std::uint64_t>(std::bit_width(i));
            if (factorial_u64(i) - width < factorial_u64(i - 1)) {
                throw std::logic_error("psi2 numerals overlap at i = " + std::to_string(i));
            }
        }
    }
}

void DigitStream::ensure_boundaries(std::uint64_t j) {
    while (bounds_.back() <= j && bounds_.back() != kSaturated) {
        const std::uint64_t i = bounds_.size();
        std::uint64_t next = 0;
        if (recipe_.kind == ConstructionKind::LiouvillePsi1 ||
            recipe_.kind == ConstructionKind::DisjunctivePsi2) {
            next = factorial_u64(i);
        } else {
            next = saturating_add(bounds_.back(), stage_length_u64(recipe_, i));
        }
        bounds_.push_back(next);
    }
}

unsigned DigitStream::stage_of(std::uint64_t j) {
    ensure_boundaries(j);
    auto it = std::upper_bound(bounds_.begin(), bounds_.end(), j);
    return static_cast<unsigned>(it - bounds_.begin());
}

const Digits& DigitStream::block_for(unsigned stage) {
    if (cached_stage_ != stage) {
        cached_block_ = stage_period_block(recipe_, stage, max_symbols_);
        cached_stage_ = stage;
    }
    return cached_block_;
}

std::uint8_t DigitStream::digit(std::uint64_t j) {
    const unsigned s = stage_of(j);
    const std::uint64_t stage_start = bounds_[s - 1];
    const std::uint64_t stage_end = bounds_[s];
    switch (recipe_.kind) {
        case ConstructionKind::LiouvillePsi1:
            return j + 1 == stage_end ? 1 : 0;
        case ConstructionKind::DisjunctivePsi2: {
            if (s < 3) return 0;
            const std::uint64_t width = std::bit_width(std::uint64_t{s});
            if (j + width < stage_end) return 0;
            return static_cast<std::uint8_t>((s >> (stage_end - 1 - j)) & 1u);
        }
        case ConstructionKind::NormalAlpha:
        case ConstructionKind::DilutedAlpha: {
            const Digits& block = block_for(s);
            return block[(j - stage_start) % block.size()];
        }
    }
    return 0;
}

void DigitStream::read(std::span<std::uint8_t> out) {
    std::size_t done = 0;
    while (done < out.size()) {
        const std::uint64_t j = cursor_;
        const unsigned s = stage_of(j);
        const std::uint64_t stage_start = bounds_[s - 1];
        const std::uint64_t stage_end = bounds_[s];
        const std::uint64_t take = std::min<std::uint64_t>(out.size() - done, stage_end - j);
        auto chunk = out.subspan(done, take);
        if (recipe_.kind == ConstructionKind::NormalAlpha ||
            recipe_.kind == ConstructionKind::DilutedAlpha) {
            const Digits& block = block_for(s);
            std::size_t pos = (j - stage_start) % block.size();
            for (auto& d : chunk) {
                d = block[pos];
                if (++pos == block.size()) pos = 0;
            }
        } else {
            // Only the last few positions of a factorial stage are non-zero.
            std::fill(chunk.begin(), chunk.end(), std::uint8_t{0});
            const std::uint64_t tail_start = std::max(j, stage_end > 64 ? stage_end - 64 : 0);
            for (std::uint64_t t = tail_start; t < j + take; ++t) chunk[t - j] = digit(t);
        }
        cursor_ += take;
        done += take;
    }
}

Digits take_prefix(DigitStream& stream, std::uint64_t length, std::uint64_t budget) {
    if (length > budget) {
        throw BudgetExceeded("prefix of " + std::to_string(length) + " digits exceeds budget of " +
                             std::to_string(budget));
    }
    Digits out(length);
    stream.seek(0);
    stream.read(out);
    return out;
}

Digits take_prefix(const ConstructionRecipe& recipe, std::uint64_t length, std::uint64_t budget) {
    DigitStream stream(recipe);
    return take_prefix(stream, length, budget);
}

}  // namespace liouville
