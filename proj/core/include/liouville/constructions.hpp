#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "liouville/bigint.hpp"
#include "liouville/debruijn.hpp"
#include "liouville/digits.hpp"

namespace liouville {

enum class ConstructionKind {
    LiouvillePsi1,    // sum 2^{-i!}
    DisjunctivePsi2,  // sum_{i>=3} i * 2^{-i!}
    NormalAlpha,      // B(k,1)^{1^1} B(k,2)^{2^2} ...
    DilutedAlpha,     // stage i: (0^{(n-m)k^i} B(k,i)^m)^{i^i}
};

/// Dilution ratio m/n with 0 < m < n, gcd(m, n) = 1.
struct Dilution {
    unsigned m = 0;
    unsigned n = 0;
    friend bool operator==(const Dilution&, const Dilution&) = default;
};

/// Parses "M/N". Throws InvalidArgument on syntax errors or when the pair is
/// not a proper fraction in lowest terms.
Dilution parse_dilution(std::string_view text);
void validate_dilution(const Dilution& d);

struct ConstructionRecipe {
    ConstructionKind kind = ConstructionKind::NormalAlpha;
    unsigned base = 2;
    std::optional<Dilution> dilution;

    static ConstructionRecipe psi1() { return {ConstructionKind::LiouvillePsi1, 2, std::nullopt}; }
    static ConstructionRecipe psi2() { return {ConstructionKind::DisjunctivePsi2, 2, std::nullopt}; }
    static ConstructionRecipe alpha(unsigned base = 2) {
        return {ConstructionKind::NormalAlpha, base, std::nullopt};
    }
    static ConstructionRecipe diluted(unsigned m, unsigned n, unsigned base = 2) {
        return {ConstructionKind::DilutedAlpha, base, Dilution{m, n}};
    }

    /// Throws InvalidArgument when the recipe is malformed.
    void validate() const;

    /// First stage carrying content: 3 for psi2, 1 otherwise.
    [[nodiscard]] unsigned first_stage() const noexcept {
        return kind == ConstructionKind::DisjunctivePsi2 ? 3u : 1u;
    }

    /// Short identifier, e.g. "alpha", "diluted(1/2)", "alpha[base=3]".
    [[nodiscard]] std::string name() const;

    friend bool operator==(const ConstructionRecipe&, const ConstructionRecipe&) = default;
};

ConstructionKind parse_construction_kind(std::string_view text);
std::string_view to_string(ConstructionKind kind);

/// Exact prefix length at the end of stage i (b_0 = 0).
///
/// NormalAlpha: sum_{j<=i} j^j k^j.  DilutedAlpha: sum_{j<=i} n k^j j^j.
/// Psi1/Psi2: i!.
BigInt stage_boundary(const ConstructionRecipe& recipe, std::uint64_t i);

/// Boundary table b_0..b_last for one recipe.
class StageSchedule {
public:
    StageSchedule(ConstructionRecipe recipe, std::uint64_t last_stage);

    [[nodiscard]] const ConstructionRecipe& recipe() const noexcept { return recipe_; }
    [[nodiscard]] std::uint64_t last_stage() const noexcept { return boundaries_.size() - 1; }
    [[nodiscard]] const BigInt& boundary(std::uint64_t i) const;
    [[nodiscard]] const std::vector<BigInt>& boundaries() const noexcept { return boundaries_; }

private:
    ConstructionRecipe recipe_;
    std::vector<BigInt> boundaries_;
};

/// The repeating unit of stage i for NormalAlpha (B(k,i)) and DilutedAlpha
/// (0^{(n-m)k^i} B(k,i)^m). Stage i consists of i^i copies of it.
Digits stage_period_block(const ConstructionRecipe& recipe, unsigned i,
                          std::uint64_t max_symbols = kDefaultSymbolCap);

/// Lazy, seekable digit expansion of a construction.
///
/// digit(j) is the coefficient of base^{-(j+1)}. Reading any index is a pure
/// function of (recipe, j); the stream only caches the current stage's period
/// block. One consumer per instance.
class DigitStream {
public:
    explicit DigitStream(ConstructionRecipe recipe, std::uint64_t max_symbols = kDefaultSymbolCap);

    [[nodiscard]] const ConstructionRecipe& recipe() const noexcept { return recipe_; }

    std::uint8_t digit(std::uint64_t j);
    std::uint8_t next() { return digit(cursor_++); }
    void seek(std::uint64_t j) noexcept { cursor_ = j; }
    [[nodiscard]] std::uint64_t position() const noexcept { return cursor_; }

    /// Stage containing index j (stages are numbered from 1).
    unsigned stage_of(std::uint64_t j);

    /// Fills `out` starting at the cursor and advances it.
    void read(std::span<std::uint8_t> out);

private:
    void ensure_boundaries(std::uint64_t j);
    const Digits& block_for(unsigned stage);

    ConstructionRecipe recipe_;
    std::uint64_t max_symbols_;
    std::uint64_t cursor_ = 0;
    std::vector<std::uint64_t> bounds_;  // saturating u64 copies of b_i
    unsigned cached_stage_ = 0;
    Digits cached_block_;
};

/// First `length` digits of the stream; throws BudgetExceeded above `budget`.
Digits take_prefix(DigitStream& stream, std::uint64_t length,
                   std::uint64_t budget = kDefaultDigitBudget);
Digits take_prefix(const ConstructionRecipe& recipe, std::uint64_t length,
                   std::uint64_t budget = kDefaultDigitBudget);

}  // namespace liouville
