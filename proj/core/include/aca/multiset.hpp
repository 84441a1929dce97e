#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "aca/residue.hpp"

namespace aca {

/// Multiplicity function Z/mZ -> N with a cached total.
///
/// Counts live in a dense array when m <= 2^20 and in an ordered map above
/// that, so very large moduli stay cheap when the multiset is small.
class ResidueMultiset {
public:
    static constexpr std::uint32_t dense_limit = 1u << 20;

    explicit ResidueMultiset(Modulus m);
    /// Dense constructor from a full count table of length m.
    ResidueMultiset(Modulus m, const std::vector<std::uint64_t>& table);

    Modulus modulus() const noexcept { return mod_; }
    bool is_dense() const noexcept { return !dense_.empty() || mod_.value() <= dense_limit; }
    std::uint64_t total() const noexcept { return total_; }

    void add(std::uint32_t x, std::uint64_t times = 1);
    std::uint64_t count(std::uint32_t x) const;

    /// Full table indexed by residue (allocates m entries).
    std::vector<std::uint64_t> table() const;
    /// Residues with non-zero count, ascending.
    std::vector<std::pair<std::uint32_t, std::uint64_t>> support() const;

    /// Multiset sum.
    ResidueMultiset& merge(const ResidueMultiset& other);

    friend bool operator==(const ResidueMultiset& a, const ResidueMultiset& b);

private:
    Modulus mod_;
    std::vector<std::uint64_t> dense_;
    std::map<std::uint32_t, std::uint64_t> sparse_;
    std::uint64_t total_ = 0;
};

struct BalanceReport {
    bool balanced = true;
    /// On failure: (smallest residue of minimal count, smallest residue of maximal count).
    std::optional<std::pair<std::uint32_t, std::uint32_t>> witness;
    explicit operator bool() const noexcept { return balanced; }
};

BalanceReport is_balanced(const ResidueMultiset& M);

/// Image of M in Z/alpha Z. Throws NotADivisor unless alpha | m.
ResidueMultiset project(const ResidueMultiset& M, std::uint64_t alpha);

/// M balanced  <=>  project(M, alpha) balanced and m_M(x + alpha) = m_M(x) for all x.
/// Returns whether that equivalence holds for this M.
bool check_projection_theorem(const ResidueMultiset& M, std::uint64_t alpha);

/// m_M(x + step) == m_M(x) for every x.
bool has_period(const ResidueMultiset& M, std::uint64_t step);

}  // namespace aca
