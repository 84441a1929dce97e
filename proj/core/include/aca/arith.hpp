#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "aca/automaton.hpp"
#include "aca/multiset.hpp"
#include "aca/orbit.hpp"
#include "aca/simplex.hpp"

namespace aca {

/// Enumerated multiset of AS(a, d, s). Throws Overflow past 64-bit cardinality.
ResidueMultiset as_multiset(const ArithSimplex& t);

/// All descriptions of the same multiset obtained by re-rooting at each
/// vertex (AS(a + (s-1)d_i, (d_j - d_i)_{j != i}, s) with d_0 = 0) and
/// permuting the differences. The input itself comes first.
std::vector<ArithSimplex> equivalent_forms(const ArithSimplex& t);

struct EuclideanSplit {
    std::int64_t lambda;
    std::int64_t mu;
};

EuclideanSplit euclidean_split(std::int64_t s, Modulus m);

/// Multiplicities of AS(a, (0, d), s) from the closed formula
/// m(a + i d) = C(lambda+1, 2) m + ceil((s-i)/m) (mu - i).
struct DegenerateTable {
    EuclideanSplit split;
    std::vector<std::uint64_t> by_step;  // entry i is m(a + i d), i in [0, m-1]
    ResidueMultiset multiset;
    bool strictly_decreasing;
};

/// Requires d invertible (NotInvertible otherwise).
DegenerateTable analytic_degenerate(Residue a, Residue d, std::int64_t s);

/// Multiplicities of AS(a, (d1, d2), s) when d2 and d2 - d1 are invertible and
/// s = 0 or -1 (mod m): period g = gcd(d1, m) and
/// m(a + i d2) = C(s+1, 2)/m + ceil(s/m) ((g-1)/2 - i) for i in [0, g-1].
struct Period2Table {
    std::uint64_t period;
    std::vector<std::uint64_t> by_step;  // entry i is m(a + i d2), i in [0, g-1]
    ResidueMultiset multiset;
};

/// Throws PreconditionViolated naming the failed hypothesis.
Period2Table analytic_period2(Residue a, Residue d1, Residue d2, std::int64_t s);

/// m(x + d_j) - m(x + d_i) = m_{F_j}(x + d_j) - m_{F_i}(x + d_i) for every x,
/// with d_0 = 0. Requires 0 <= i < j <= n (IndexOutOfRange).
bool key_lemma_check(const ArithSimplex& t, int i, int j);

struct DecompositionPart {
    std::vector<std::int64_t> k;           // offset in [0, alpha-1]^n
    std::optional<ArithSimplex> predicted;  // empty when the part has no cell
};

struct Decomposition {
    std::uint64_t alpha = 1;
    std::int64_t t = 0;  // s = -t (mod alpha)
    std::vector<DecompositionPart> parts;
    bool exhaustive = false;        // every cell checked, otherwise sampled
    std::uint64_t cells_checked = 0;
    std::uint64_t mismatches = 0;   // cells whose value differs from the prediction
    bool partition_ok = false;      // part sizes add up and (when exhaustive) multisets sum to the simplex
    bool verified() const noexcept { return mismatches == 0 && partition_ok; }
};

/// Splits the orbit simplex into alpha^n arithmetic subsimplices, taking one
/// cell every alpha steps along each axis, and checks every prediction.
/// Requires sigma invertible, ord(sigma) | alpha and s = -t (mod alpha) with
/// t in [0, n-1]; throws PreconditionViolated otherwise.
Decomposition decompose(const WeightScheme& w, const ArithmeticSeed& seed, const SimplexSpec& spec,
                        std::uint64_t alpha, std::uint64_t rng_seed = 0x5eed);

}  // namespace aca
