#include "aca/residue.hpp"

#include <algorithm>
#include <ostream>
#include <string>

namespace aca {

Modulus::Modulus(std::uint64_t m) {
    if (m == 0 || m > max_value) {
        throw std::invalid_argument("modulus must lie in [1, 2^32-1], got " + std::to_string(m));
    }
    m_ = static_cast<std::uint32_t>(m);
}

std::uint32_t Modulus::pow(std::uint32_t a, std::uint64_t e) const noexcept {
    std::uint64_t result = 1 % m_;
    std::uint64_t base = a % m_;
    while (e != 0) {
        if (e & 1u) result = result * base % m_;
        base = base * base % m_;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(result);
}

void Residue::check_same(const Residue& a, const Residue& b) {
    if (!(a.mod_ == b.mod_)) {
        throw std::invalid_argument("residues over different moduli: " +
                                    std::to_string(a.mod_.value()) + " vs " +
                                    std::to_string(b.mod_.value()));
    }
}

Residue Residue::pow(std::int64_t e) const {
    if (e >= 0) return from_canonical(mod_.pow(v_, static_cast<std::uint64_t>(e)), mod_);
    return inv(*this).pow(-e);
}

std::ostream& operator<<(std::ostream& os, const Residue& r) {
    return os << r.value() << " (mod " << r.modulus().value() << ")";
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) noexcept {
    while (b != 0) {
        auto t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::uint64_t lcm(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    auto g = gcd(a, b);
    auto q = a / g;
    if (q > UINT64_MAX / b) throw Overflow("lcm overflows 64 bits");
    return q * b;
}

std::uint64_t gcd_with_modulus(Residue x) noexcept { return gcd(x.value(), x.modulus().value()); }

bool is_invertible(Residue x) noexcept { return gcd_with_modulus(x) == 1; }

Residue inv(Residue x) {
    const std::int64_t m = x.modulus().value();
    // Extended Euclid on (x, m); coefficients stay below m in magnitude.
    std::int64_t r0 = m, r1 = x.value();
    std::int64_t t0 = 0, t1 = 1;
    while (r1 != 0) {
        auto q = r0 / r1;
        auto r2 = r0 - q * r1;
        r0 = r1;
        r1 = r2;
        auto t2 = t0 - q * t1;
        t0 = t1;
        t1 = t2;
    }
    // gcd(0, m) = m; for m = 1 every residue is the unit 0.
    if (r0 != 1 && m != 1) {
        throw NotInvertible(x.value(), static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(r0));
    }
    return Residue(t0, x.modulus());
}

namespace {

void require_unit(Residue x) {
    auto g = gcd_with_modulus(x);
    if (g != 1 && x.modulus().value() != 1) {
        throw NotInvertible(x.value(), x.modulus().value(), g);
    }
}

}  // namespace

std::uint64_t ord(Residue x) {
    require_unit(x);
    const Modulus mod = x.modulus();
    const std::uint32_t one = 1 % mod.value();
    std::uint32_t p = x.value();
    std::uint64_t k = 1;
    while (p != one) {
        p = mod.mul(p, x.value());
        ++k;
    }
    return k;
}

std::uint64_t pord(Residue x) {
    require_unit(x);
    const Modulus mod = x.modulus();
    const std::uint32_t one = 1 % mod.value();
    const std::uint32_t minus_one = mod.neg(one);
    std::uint32_t p = x.value();
    std::uint64_t k = 1;
    while (p != one && p != minus_one) {
        p = mod.mul(p, x.value());
        ++k;
    }
    return k;
}

std::uint64_t size_period(Residue sigma) { return lcm(ord(sigma), sigma.modulus().value()); }

unsigned v2(Modulus m) noexcept {
    unsigned u = 0;
    std::uint32_t v = m.value();
    while ((v & 1u) == 0) {
        v >>= 1;
        ++u;
    }
    return u;
}

std::vector<PrimePower> factorize(std::uint64_t n) {
    std::vector<PrimePower> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        PrimePower pp{p, 0, 1};
        while (n % p == 0) {
            n /= p;
            ++pp.exponent;
            pp.value *= p;
        }
        out.push_back(pp);
    }
    if (n > 1) out.push_back({n, 1, n});
    return out;
}

std::uint64_t euler_phi(std::uint64_t n) {
    if (n == 0) return 0;
    std::uint64_t phi = n;
    for (const auto& pp : factorize(n)) phi = phi / pp.prime * (pp.prime - 1);
    return phi;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out{1};
    for (const auto& pp : factorize(n)) {
        const auto existing = out.size();
        std::uint64_t f = 1;
        for (unsigned e = 1; e <= pp.exponent; ++e) {
            f *= pp.prime;
            for (std::size_t i = 0; i < existing; ++i) out.push_back(out[i] * f);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace aca
