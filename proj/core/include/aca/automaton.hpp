#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aca/residue.hpp"

namespace aca {

/// Weight stencil of an additive cellular automaton of dimension q and radius r.
///
/// Weights are indexed by offsets j in [-r, r]^q and stored row-major with the
/// last axis varying fastest, offsets ascending from -r to r. The raw integer
/// weights are kept (they may be negative); sigma and sigma_k are derived from
/// them and cached reduced modulo m.
class WeightScheme {
public:
    WeightScheme(unsigned q, unsigned r, std::vector<std::int64_t> weights, Modulus m);

    unsigned dim() const noexcept { return q_; }
    unsigned radius() const noexcept { return r_; }
    Modulus modulus() const noexcept { return mod_; }
    std::span<const std::int64_t> weights() const noexcept { return weights_; }

    /// Weight at the given offset (each component in [-r, r]).
    std::int64_t weight(std::span<const std::int64_t> offset) const;

    /// Offset of the flat index `flat`.
    std::vector<std::int64_t> offset_of(std::size_t flat) const;

    /// sigma = sum of weights (mod m).
    Residue sigma() const noexcept { return Residue(sigma_, mod_); }
    /// sigma_k = sum of j_k * w_j (mod m), k = 1..q stored at [k-1].
    std::span<const std::uint32_t> sigmas() const noexcept { return sigmas_; }
    Residue sigma_k(unsigned k) const { return Residue(sigmas_.at(k - 1), mod_); }

    /// Same stencil over another modulus.
    WeightScheme with_modulus(Modulus m) const { return WeightScheme(q_, r_, weights_, m); }

    /// Canonical text form `q=..;r=..;w=...`.
    std::string to_string() const;

    friend bool operator==(const WeightScheme& a, const WeightScheme& b) {
        return a.q_ == b.q_ && a.r_ == b.r_ && a.weights_ == b.weights_ && a.mod_ == b.mod_;
    }

private:
    unsigned q_;
    unsigned r_;
    std::vector<std::int64_t> weights_;
    Modulus mod_;
    std::uint32_t sigma_ = 0;
    std::vector<std::uint32_t> sigmas_;
};

struct SigmaCoefficients {
    Residue sigma;
    std::vector<Residue> sigmas;
};

SigmaCoefficients sigma_coeffs(const WeightScheme& w);

/// Pascal cellular automaton of dimension q: weight 1 at 0 and at -e_1..-e_q.
WeightScheme pascal_weights(unsigned q, Modulus m);

/// Parses `q=1;r=1;w=2,1,1`, `pascal:q`, or a bare list `2,1,1` (q = 1, odd length).
WeightScheme parse_stencil(std::string_view text, Modulus m);

/// Finite axis-aligned box of residues in Z^q.
class Window {
public:
    Window(std::vector<std::int64_t> origin, std::vector<std::int64_t> extents, Modulus m);
    Window(std::vector<std::int64_t> origin, std::vector<std::int64_t> extents,
           std::vector<std::uint32_t> values, Modulus m);

    unsigned dim() const noexcept { return static_cast<unsigned>(origin_.size()); }
    Modulus modulus() const noexcept { return mod_; }
    std::span<const std::int64_t> origin() const noexcept { return origin_; }
    std::span<const std::int64_t> extents() const noexcept { return extents_; }
    std::size_t size() const noexcept { return values_.size(); }

    std::span<const std::uint32_t> values() const noexcept { return values_; }
    std::span<std::uint32_t> values() noexcept { return values_; }

    bool contains(std::span<const std::int64_t> index) const noexcept;
    /// Value at an absolute index; throws OutOfDomain outside the window.
    std::uint32_t at(std::span<const std::int64_t> index) const;
    void set(std::span<const std::int64_t> index, std::uint32_t v);

    /// Row-major flat position of an absolute index (no bounds check).
    std::size_t flat(std::span<const std::int64_t> index) const noexcept;

    friend bool operator==(const Window&, const Window&) = default;

private:
    std::vector<std::int64_t> origin_;
    std::vector<std::int64_t> extents_;
    std::vector<std::uint32_t> values_;
    Modulus mod_;
};

/// One application of the automaton on a finite window. The result covers the
/// sub-box whose full stencil neighbourhood lies inside `win`, so it is shrunk
/// by r on each side of every axis.
Window step(const WeightScheme& w, const Window& win);

}  // namespace aca
