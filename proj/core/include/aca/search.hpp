#pragma once

// Steinhaus triangles and exhaustive searches over their first rows.
//
// A Steinhaus triangle of size s is built from a first row of s residues by
// taking sums of adjacent entries: row r+1 entry i = row r entry i + row r
// entry i+1. It is the (-+) triangle of the Pascal automaton PCA_1.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aca/multiset.hpp"
#include "aca/residue.hpp"
#include "aca/verify.hpp"

namespace aca {

struct SteinhausTriangle {
    Modulus mod;
    std::vector<std::vector<std::uint32_t>> rows;  // lengths s, s-1, ..., 1

    std::int64_t size() const noexcept { return static_cast<std::int64_t>(rows.size()); }
    ResidueMultiset multiset() const;
};

/// Builds the triangle; values of `first_row` are reduced mod m.
/// Throws OutOfDomain for an empty row.
SteinhausTriangle steinhaus(std::span<const std::int64_t> first_row, Modulus m);

struct SearchOptions {
    std::uint64_t shards = 1;  // number of contiguous intervals of the row space
    /// Restrict the run to rows with lexicographic index in [first, last).
    std::optional<std::pair<std::uint64_t, std::uint64_t>> range;
    bool symmetry = false;     // enumerate unit-scaling representatives only
    bool count_only = false;
    unsigned threads = 0;      // 0 = hardware concurrency
    std::uint64_t limit = 1'000'000'000;  // largest unsharded row space
    /// Plain text file with one `start end status count` line per finished
    /// shard; finished shards found there are not searched again.
    std::optional<std::string> checkpoint;
};

struct ShardReport {
    std::uint64_t start = 0;
    std::uint64_t end = 0;
    bool resumed = false;       // count read back from the checkpoint
    std::uint64_t count = 0;    // balanced rows in [start, end), symmetry weights applied
    std::uint64_t visited = 0;  // search nodes expanded
};

struct SearchResult {
    Modulus mod;
    std::int64_t size = 0;
    bool admissible = true;
    std::string reason;        // set when the run ended without enumerating
    std::uint64_t count = 0;   // number of balanced first rows
    std::uint64_t visited = 0;
    /// Balanced rows in lexicographic order (representatives under symmetry);
    /// empty when count_only.
    std::vector<std::vector<std::uint32_t>> rows;
    std::vector<ShardReport> shards;
};

/// Lexicographic index of a row read as a base-m number, first entry most significant.
std::uint64_t row_index(std::span<const std::uint32_t> row, Modulus m);
std::vector<std::uint32_t> row_from_index(std::uint64_t index, std::int64_t size, Modulus m);

/// All first rows of size s whose Steinhaus triangle is balanced.
/// Returns immediately (admissible = false) when m does not divide C(s+1, 2).
/// Throws BudgetExceeded when m^s exceeds options.limit and neither shards
/// nor a range were requested, Overflow when m^s does not fit in 63 bits.
SearchResult search_balanced(Modulus m, std::int64_t s, const SearchOptions& options = {});

/// Steinhaus triangles whose first row is AP(a, d, s) at the first `count`
/// sizes s = 0 or -1 (mod ord_m(2^m) m). Requires m odd and d invertible.
Verdict verify_chap1(Residue a, Residue d, std::size_t count);

/// Scans the PCA_1 orbit of the interlaced seed for balanced (-+) triangles
/// at every s = 0 (mod m) and balanced triangles of both orientations at every
/// s = -1 (mod 3m), for s <= size_bound. Requires m odd.
Verdict verify_chap2(Modulus m, std::int64_t size_bound);

}  // namespace aca
