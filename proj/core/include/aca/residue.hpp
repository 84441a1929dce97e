#pragma once

// Exact arithmetic in Z/mZ for moduli up to 2^32 - 1, together with the
// multiplicative order functions used by the balance theorems.
//
// Values are held in 32 bits and every product is formed in 64 bits, so no
// intermediate result can overflow.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "aca/error.hpp"

namespace aca {

class Modulus {
public:
    static constexpr std::uint64_t max_value = 0xFFFFFFFFull;

    /// Throws std::invalid_argument unless 1 <= m <= 2^32 - 1.
    explicit Modulus(std::uint64_t m);

    std::uint32_t value() const noexcept { return m_; }

    std::uint32_t reduce(std::int64_t x) const noexcept {
        auto r = x % static_cast<std::int64_t>(m_);
        return static_cast<std::uint32_t>(r < 0 ? r + m_ : r);
    }
    std::uint32_t reduce_unsigned(std::uint64_t x) const noexcept {
        return static_cast<std::uint32_t>(x % m_);
    }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept {
        std::uint64_t s = std::uint64_t{a} + b;
        return static_cast<std::uint32_t>(s >= m_ ? s - m_ : s);
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept {
        return a >= b ? a - b : static_cast<std::uint32_t>(std::uint64_t{a} + m_ - b);
    }
    std::uint32_t neg(std::uint32_t a) const noexcept { return a == 0 ? 0 : m_ - a; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
        return static_cast<std::uint32_t>(std::uint64_t{a} * b % m_);
    }
    /// a^e for e >= 0.
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const noexcept;

    friend bool operator==(const Modulus&, const Modulus&) = default;

private:
    std::uint32_t m_;
};

/// Canonical representative of a class of Z/mZ, always in [0, m-1].
class Residue {
public:
    Residue(std::int64_t value, Modulus m) : mod_(m), v_(m.reduce(value)) {}

    static Residue zero(Modulus m) { return Residue(0, m); }
    static Residue one(Modulus m) { return Residue(1, m); }

    std::uint32_t value() const noexcept { return v_; }
    Modulus modulus() const noexcept { return mod_; }

    Residue operator-() const { return from_canonical(mod_.neg(v_), mod_); }
    friend Residue operator+(Residue a, Residue b) {
        check_same(a, b);
        return from_canonical(a.mod_.add(a.v_, b.v_), a.mod_);
    }
    friend Residue operator-(Residue a, Residue b) {
        check_same(a, b);
        return from_canonical(a.mod_.sub(a.v_, b.v_), a.mod_);
    }
    friend Residue operator*(Residue a, Residue b) {
        check_same(a, b);
        return from_canonical(a.mod_.mul(a.v_, b.v_), a.mod_);
    }
    friend Residue operator*(std::int64_t k, Residue b) { return Residue(k, b.mod_) * b; }
    Residue& operator+=(Residue o) { return *this = *this + o; }
    Residue& operator-=(Residue o) { return *this = *this - o; }
    Residue& operator*=(Residue o) { return *this = *this * o; }

    /// x^e; a negative exponent requires x to be invertible.
    Residue pow(std::int64_t e) const;

    friend bool operator==(const Residue& a, const Residue& b) {
        return a.v_ == b.v_ && a.mod_ == b.mod_;
    }

private:
    static Residue from_canonical(std::uint32_t v, Modulus m) {
        Residue r(0, m);
        r.v_ = v;
        return r;
    }
    static void check_same(const Residue& a, const Residue& b);

    Modulus mod_;
    std::uint32_t v_;
};

std::ostream& operator<<(std::ostream& os, const Residue& r);

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) noexcept;
std::uint64_t lcm(std::uint64_t a, std::uint64_t b);

/// gcd of m and any representative of x.
std::uint64_t gcd_with_modulus(Residue x) noexcept;
bool is_invertible(Residue x) noexcept;

/// Multiplicative inverse; throws NotInvertible carrying gcd(x, m).
Residue inv(Residue x);

/// Smallest k >= 1 with x^k = 1.
std::uint64_t ord(Residue x);

/// Smallest k >= 1 with x^k = +1 or -1, i.e. the order of x in (Z/mZ)^* / {-1, 1}.
std::uint64_t pord(Residue x);

/// lcm(ord_m(sigma), m), the size period of the main orbit theorem.
std::uint64_t size_period(Residue sigma);

/// 2-adic valuation of m.
unsigned v2(Modulus m) noexcept;

/// Euler's totient, by trial division.
std::uint64_t euler_phi(std::uint64_t n);

struct PrimePower {
    std::uint64_t prime;
    unsigned exponent;
    std::uint64_t value;  // prime^exponent
};

/// Prime factorisation by trial division, primes ascending.
std::vector<PrimePower> factorize(std::uint64_t n);

/// All positive divisors of n, ascending.
std::vector<std::uint64_t> divisors(std::uint64_t n);

}  // namespace aca
