#pragma once

// Orbits of infinite arrays under an additive cellular automaton.
//
// An orbit point is (i, j) with i in Z^q (space) and j >= 0 (time). Two
// evaluation strategies are provided: a closed form for arithmetic seeds and
// layer-by-layer stencil application over the dependency cone for any seed.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "aca/automaton.hpp"
#include "aca/residue.hpp"

namespace aca {

/// AA(a, d): a_i = a + sum_k i_k d_k.
struct ArithmeticSeed {
    Residue a;
    std::vector<Residue> d;
};

/// 1 at the origin, 0 elsewhere.
struct DeltaSeed {
    unsigned dim = 1;
};

/// The one-dimensional interlacing of three progressions:
/// s(3t) = -(2t+1), s(3t+1) = s(3t+2) = t+1 for every integer t.
struct InterlaceSeed {};

/// a_i = sum_k pattern_k[i_k mod len_k]; one pattern per axis.
struct PeriodicSeed {
    std::vector<std::vector<std::uint32_t>> patterns;
};

/// Finite window of values; outside it the fallback is used when present,
/// otherwise evaluation raises OutOfDomain.
struct ExplicitSeed {
    Window window;
    std::optional<std::uint32_t> fallback;
};

class Seed {
public:
    using Variant = std::variant<ArithmeticSeed, DeltaSeed, InterlaceSeed, PeriodicSeed, ExplicitSeed>;

    Seed(Variant v, Modulus m);

    static Seed arithmetic(Residue a, std::vector<Residue> d);
    static Seed delta(unsigned dim, Modulus m) { return Seed(DeltaSeed{dim}, m); }
    static Seed interlace(Modulus m) { return Seed(InterlaceSeed{}, m); }

    Modulus modulus() const noexcept { return mod_; }
    unsigned dim() const noexcept { return dim_; }
    const Variant& variant() const noexcept { return v_; }
    const ArithmeticSeed* as_arithmetic() const noexcept { return std::get_if<ArithmeticSeed>(&v_); }

    /// Seed value at space index i.
    std::uint32_t at(std::span<const std::int64_t> i) const;

    std::string describe() const;

private:
    Variant v_;
    Modulus mod_;
    unsigned dim_;
};

/// Parses `ap:a,d`, `aa:a:d1,d2,...`, `delta`, `interlace`,
/// `periodic:p1,p2,...` (axes separated by '/'). `dim` is used for `delta`.
Seed parse_seed(std::string_view text, Modulus m, unsigned dim = 1);

struct OrbitPoint {
    std::vector<std::int64_t> space;
    std::int64_t time = 0;
};

/// d_{q+1} = sigma^{-1} * sum_k sigma_k d_k. Throws NotInvertible.
Residue derived_difference(const WeightScheme& w, std::span<const Residue> d);

/// sigma^j (a + sum_k i_k d_k + j d_{q+1}). Throws NotInvertible.
Residue closed_form(const WeightScheme& w, const ArithmeticSeed& seed, const OrbitPoint& p);

/// Arithmetic description of row j:
/// AA(sigma^j a + j sigma^{j-1} sum_k sigma_k d_k, sigma^j d). Needs no inverse.
ArithmeticSeed orbit_row(const WeightScheme& w, const ArithmeticSeed& seed, std::int64_t j);

/// Cell budget: SIMPLEX_BUDGET from the environment if set, else 10^8.
std::uint64_t default_cell_budget();

/// Value of the orbit at p by applying the stencil j times over the cone
/// i + [-jr, jr]^q. Throws BudgetExceeded when (2jr+1)^q * j > cap.
Residue cone_value(const WeightScheme& w, const Seed& seed, const OrbitPoint& p,
                   std::uint64_t cap = default_cell_budget());

/// Read access to an orbit (or any array indexed by space x time).
class OrbitAccessor {
public:
    virtual ~OrbitAccessor() = default;
    virtual Modulus modulus() const = 0;
    virtual unsigned space_dim() const = 0;
    /// Throws OutOfDomain outside the accessible region.
    virtual std::uint32_t at(std::span<const std::int64_t> space, std::int64_t time) const = 0;
};

/// Orbit of an arithmetic seed, evaluated row by row through orbit_row.
class ArithmeticOrbit final : public OrbitAccessor {
public:
    ArithmeticOrbit(WeightScheme w, ArithmeticSeed seed);

    Modulus modulus() const override { return w_.modulus(); }
    unsigned space_dim() const override { return w_.dim(); }
    std::uint32_t at(std::span<const std::int64_t> space, std::int64_t time) const override;

    ArithmeticSeed row(std::int64_t time) const { return orbit_row(w_, seed_, time); }
    const WeightScheme& weights() const noexcept { return w_; }
    const ArithmeticSeed& seed() const noexcept { return seed_; }

private:
    WeightScheme w_;
    ArithmeticSeed seed_;
    std::uint32_t drift_;  // sum_k sigma_k d_k
};

/// Orbit values tabulated over a box [lo, hi] x [0, T] by cone evaluation.
class TabulatedOrbit final : public OrbitAccessor {
public:
    TabulatedOrbit(const WeightScheme& w, const Seed& seed, std::vector<std::int64_t> lo,
                   std::vector<std::int64_t> hi, std::int64_t max_time,
                   std::uint64_t cap = default_cell_budget());

    Modulus modulus() const override { return mod_; }
    unsigned space_dim() const override { return static_cast<unsigned>(lo_.size()); }
    std::uint32_t at(std::span<const std::int64_t> space, std::int64_t time) const override;

    std::int64_t max_time() const noexcept { return static_cast<std::int64_t>(layers_.size()) - 1; }
    std::span<const std::int64_t> lo() const noexcept { return lo_; }
    std::span<const std::int64_t> hi() const noexcept { return hi_; }

private:
    Modulus mod_;
    std::vector<std::int64_t> lo_, hi_;
    std::vector<Window> layers_;
};

/// Array given explicitly over space x time; time is the last coordinate.
class ExplicitArray final : public OrbitAccessor {
public:
    explicit ExplicitArray(Window values) : values_(std::move(values)) {}

    Modulus modulus() const override { return values_.modulus(); }
    unsigned space_dim() const override { return values_.dim() - 1; }
    std::uint32_t at(std::span<const std::int64_t> space, std::int64_t time) const override;

private:
    Window values_;
};

}  // namespace aca
