#pragma once

// Oriented simplices in orbits and explicit arrays.
//
// A simplex is named by its apex j (space coordinates followed by time), an
// orientation eps in {-1,+1}^n and a size s. Its cells are j + eps.k for every
// k in N^n with k_1 + ... + k_n <= s-1. Local coordinates k are used
// throughout; axis n (the last one) is time.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aca/multiset.hpp"
#include "aca/orbit.hpp"

namespace aca {

struct SimplexSpec {
    std::vector<std::int64_t> apex;  // q space coordinates, then time
    std::vector<int> orient;         // entries +1 / -1, same length as apex
    std::int64_t size = 1;

    unsigned dim() const noexcept { return static_cast<unsigned>(apex.size()); }
    /// Checks shape and that the simplex stays at time >= 0 (OutOfDomain otherwise).
    void validate() const;
};

/// Parses an orientation string such as "++-".
std::vector<int> parse_orientation(std::string_view text);
std::string orientation_string(std::span<const int> orient);

/// AS(a, d, s): the multiset { a + sum_k i_k d_k : i in N^n, sum i <= s-1 }.
struct ArithSimplex {
    Residue a;
    std::vector<Residue> d;
    std::int64_t size = 1;

    unsigned dim() const noexcept { return static_cast<unsigned>(d.size()); }
    Modulus modulus() const noexcept { return a.modulus(); }
    std::string describe() const;
};

/// C(s+n-1, n); throws Overflow beyond 64 bits.
std::uint64_t cardinality(unsigned n, std::int64_t s);

/// Calls fn(k) for every k in N^n with sum k <= s-1, first coordinate fastest.
void for_each_simplex_index(unsigned n, std::int64_t s, const std::function<void(std::span<const std::int64_t>)>& fn);

/// Values of a simplex addressed by local coordinates k.
class SimplexValues {
public:
    SimplexValues(unsigned n, std::int64_t s, Modulus m);

    unsigned dim() const noexcept { return n_; }
    std::int64_t size() const noexcept { return s_; }
    Modulus modulus() const noexcept { return mod_; }

    std::uint32_t at(std::span<const std::int64_t> k) const;
    void set(std::span<const std::int64_t> k, std::uint32_t v);

    ResidueMultiset multiset() const;

private:
    std::size_t index(std::span<const std::int64_t> k) const;

    unsigned n_;
    std::int64_t s_;
    Modulus mod_;
    std::vector<std::uint32_t> cells_;  // dense s^n cube, only sum k <= s-1 used
};

/// Multiset of the simplex in the array. Throws OutOfDomain if the simplex
/// reaches negative time or leaves the accessor's domain.
ResidueMultiset extract(const OrbitAccessor& orbit, const SimplexSpec& spec);
SimplexValues extract_values(const OrbitAccessor& orbit, const SimplexSpec& spec);

/// Sizes 1 <= s <= bound for which m divides C(s+n-1, n), the necessary size
/// condition for a balanced n-simplex.
std::vector<std::int64_t> admissible_sizes(Modulus m, unsigned n, std::int64_t bound);
/// Single-size test behind admissible_sizes.
bool is_admissible_size(Modulus m, unsigned n, std::int64_t s);

enum class BoundaryKind { Vertex, Edge, Facet, Row };

struct BoundaryPart {
    BoundaryKind kind;
    int first = 0;   // vertex / facet / row index, or first edge endpoint
    int second = 0;  // second edge endpoint
    ResidueMultiset multiset;
    std::vector<std::uint32_t> sequence;       // vertices and edges, in order
    std::optional<ArithSimplex> arithmetic;  // closed-form description when known
};

/// Vertex k in [0,n]; Edge (k,l) distinct in [0,n]; Facet k in [0,n]; Row k in [0,s-1].
/// Throws IndexOutOfRange.
BoundaryPart boundary(const OrbitAccessor& orbit, const SimplexSpec& spec, BoundaryKind kind, int first,
                      int second = 0);
BoundaryPart boundary(const ArithSimplex& t, BoundaryKind kind, int first, int second = 0);

/// a_i + a_{s-i+1} = 0 for every i.
bool is_antisymmetric(std::span<const std::uint32_t> seq, Modulus m);
/// (u,v)-antisymmetry, 0 <= u < v <= n.
bool is_antisymmetric(const SimplexValues& t, unsigned u, unsigned v);

/// Reads a triangle (one row per line, comma separated, row k_2 holds s-k_2
/// entries indexed by k_1) or a tetrahedron (layers k_3 separated by blank
/// lines). A single line is a sequence. '#' starts a comment.
SimplexValues parse_simplex_text(std::string_view text, Modulus m);

}  // namespace aca
