#include <doctest.h>

#include <numeric>

#include "aca/residue.hpp"
#include "oracles.hpp"

using namespace aca;

TEST_CASE("modulus range") {
    CHECK_THROWS_AS(Modulus(0), std::invalid_argument);
    CHECK_THROWS_AS(Modulus(Modulus::max_value + 1), std::invalid_argument);
    CHECK(Modulus(Modulus::max_value).value() == 0xFFFFFFFFu);
}

TEST_CASE("reduction keeps canonical representatives") {
    Modulus m(7);
    CHECK(m.reduce(-1) == 6);
    CHECK(m.reduce(-14) == 0);
    CHECK(Residue(23, m).value() == 2);
    CHECK((-Residue(3, m)).value() == 4);
    CHECK((Residue(5, m) + Residue(4, m)).value() == 2);
    CHECK((Residue(2, m) - Residue(5, m)).value() == 4);
}

TEST_CASE("mixing moduli throws") {
    CHECK_THROWS(Residue(1, Modulus(5)) + Residue(1, Modulus(7)));
}

TEST_CASE("large modulus products do not overflow") {
    Modulus m(Modulus::max_value);
    const std::uint32_t big = 0xFFFFFFFEu;  // = -1
    CHECK(m.mul(big, big) == 1);
    CHECK(Residue(big, m).pow(3).value() == big);
    CHECK(m.pow(2, 32) == 1);  // 2^32 = 1 mod 2^32 - 1
}

TEST_CASE("inverse") {
    CHECK(inv(Residue(1, Modulus(9))).value() == 1);
    CHECK(inv(Residue(2, Modulus(5))).value() == 3);
    try {
        inv(Residue(2, Modulus(4)));
        FAIL("expected NotInvertible");
    } catch (const NotInvertible& e) {
        CHECK(e.gcd() == 2);
    }
    for (std::int64_t m = 1; m <= 60; ++m) {
        for (std::int64_t x = 0; x < m; ++x) {
            Residue r(x, Modulus(m));
            auto want = oracle::inverse(x, m);
            CHECK(is_invertible(r) == want.has_value());
            if (want) CHECK(inv(r).value() == *want);
        }
    }
}

TEST_CASE("negative powers need a unit") {
    Modulus m(11);
    CHECK(Residue(2, m).pow(-1).value() == 6);
    CHECK((Residue(2, m).pow(-3) * Residue(2, m).pow(3)).value() == 1);
    CHECK_THROWS_AS(Residue(0, m).pow(-1), NotInvertible);
}

TEST_CASE("ord and pord") {
    CHECK(ord(Residue(1, Modulus(7))) == 1);
    CHECK(ord(Residue(2, Modulus(5))) == 4);
    CHECK(ord(Residue(4, Modulus(5))) == 2);
    CHECK(pord(Residue(1, Modulus(7))) == 1);
    CHECK(pord(Residue(2, Modulus(5))) == 2);
    CHECK(pord(Residue(4, Modulus(5))) == 1);
    CHECK_THROWS_AS(ord(Residue(2, Modulus(4))), NotInvertible);
    for (std::int64_t m = 2; m <= 80; ++m) {
        for (std::int64_t x = 1; x < m; ++x) {
            Residue r(x, Modulus(m));
            if (!is_invertible(r)) continue;
            CHECK(ord(r) == static_cast<std::uint64_t>(oracle::ord(x, m)));
            CHECK(pord(r) == static_cast<std::uint64_t>(oracle::pord(x, m)));
        }
    }
}

TEST_CASE("size period") {
    CHECK(size_period(Residue(2, Modulus(5))) == 20);
    CHECK(size_period(Residue(1, Modulus(9))) == 9);
    CHECK(size_period(Residue(3, Modulus(10))) == 20);
}

TEST_CASE("two-adic valuation") {
    CHECK(v2(Modulus(7)) == 0);
    CHECK(v2(Modulus(10)) == 1);
    CHECK(v2(Modulus(12)) == 2);
    CHECK(v2(Modulus(1024)) == 10);
}

TEST_CASE("factorisation helpers") {
    auto f = factorize(360);
    REQUIRE(f.size() == 3);
    CHECK(f[0].prime == 2);
    CHECK(f[0].exponent == 3);
    CHECK(f[2].value == 5);
    CHECK(divisors(12) == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12});
    for (std::uint64_t n = 1; n <= 200; ++n) {
        std::uint64_t phi = 0;
        for (std::uint64_t k = 1; k <= n; ++k) phi += std::gcd(k, n) == 1;
        CHECK(euler_phi(n) == phi);
    }
    CHECK(lcm(4, 6) == 12);
    CHECK(gcd(0, 9) == 9);
}
