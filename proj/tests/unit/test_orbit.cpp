#include <doctest.h>

#include <random>

#include "aca/orbit.hpp"
#include "oracles.hpp"

using namespace aca;

namespace {

std::int64_t closed(const WeightScheme& w, const ArithmeticSeed& s, std::vector<std::int64_t> i, std::int64_t j) {
    return closed_form(w, s, OrbitPoint{std::move(i), j}).value();
}

}  // namespace

TEST_CASE("closed form on the (2,1,1) orbit mod 5") {
    Modulus m(5);
    auto w = parse_stencil("2,1,1", m);
    auto seed = *parse_seed("ap:0,1", m).as_arithmetic();
    CHECK(derived_difference(w, seed.d).value() == 1);
    CHECK(closed(w, seed, {4}, 1) == 0);
    CHECK(closed(w, seed, {2}, 3) == 0);
    CHECK(cone_value(w, Seed::arithmetic(seed.a, seed.d), OrbitPoint{{3}, 1}).value() == 1);
}

TEST_CASE("derived difference") {
    Modulus m(5);
    std::vector<Residue> one{Residue(1, m)};
    CHECK(derived_difference(pascal_weights(1, m), one).value() == 2);
    CHECK(derived_difference(parse_stencil("2,1,1", m), one).value() == 1);
    std::vector<Residue> zero{Residue(0, m)};
    CHECK(derived_difference(parse_stencil("2,1,1", m), zero).value() == 0);
    CHECK_THROWS_AS(derived_difference(parse_stencil("1,0,1", Modulus(4)), std::vector<Residue>{Residue(1, Modulus(4))}),
                    NotInvertible);
}

TEST_CASE("rows of an arithmetic orbit") {
    Modulus m(5);
    auto w = parse_stencil("2,1,1", m);
    ArithmeticSeed seed{Residue(0, m), {Residue(1, m)}};
    auto r0 = orbit_row(w, seed, 0);
    CHECK(r0.a.value() == 0);
    CHECK(r0.d[0].value() == 1);
    auto r1 = orbit_row(w, seed, 1);
    CHECK(r1.a.value() == 4);
    CHECK(r1.d[0].value() == 4);

    Modulus six(6);
    auto degenerate = parse_stencil("1,2,3", six);  // sigma = 6 = 0
    ArithmeticSeed s6{Residue(5, six), {Residue(1, six)}};
    auto r2 = orbit_row(degenerate, s6, 2);
    CHECK(r2.a.value() == 0);
    CHECK(r2.d[0].value() == 0);
    auto r5 = orbit_row(degenerate, s6, 5);
    CHECK(r5.a.value() == 0);
}

TEST_CASE("sigma = 1 leaves row 0 as the seed") {
    Modulus m(11);
    auto w = parse_stencil("3,0,-2", m);
    ArithmeticSeed seed{Residue(4, m), {Residue(7, m)}};
    for (std::int64_t i = -5; i <= 5; ++i) CHECK(closed(w, seed, {i}, 0) == m.reduce(4 + 7 * i));
}

TEST_CASE("cone evaluation against the recursive definition") {
    Modulus m(7);
    auto w = pascal_weights(1, m);
    auto delta = Seed::delta(1, m);
    CHECK(cone_value(w, delta, OrbitPoint{{2}, 4}).value() == 6);

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        const std::int64_t mv = 2 + static_cast<std::int64_t>(rng() % 20);
        const unsigned q = 1 + static_cast<unsigned>(rng() % 2);
        const int r = 1 + static_cast<int>(rng() % 2);
        std::size_t count = 1;
        for (unsigned k = 0; k < q; ++k) count *= static_cast<std::size_t>(2 * r + 1);
        std::vector<std::int64_t> weights(count);
        for (auto& x : weights) x = static_cast<std::int64_t>(rng() % 9) - 4;
        Modulus mm(static_cast<std::uint64_t>(mv));
        WeightScheme ws(q, static_cast<unsigned>(r), weights, mm);
        const std::int64_t a = static_cast<std::int64_t>(rng() % 50);
        std::vector<std::int64_t> d(q);
        std::vector<Residue> dr;
        for (auto& x : d) {
            x = static_cast<std::int64_t>(rng() % 50);
            dr.emplace_back(x, mm);
        }
        oracle::Orbit naive(q, r, weights, mv, [&](const std::vector<std::int64_t>& i) {
            std::int64_t v = a;
            for (unsigned k = 0; k < q; ++k) v += i[k] * d[k];
            return v;
        });
        Seed seed = Seed::arithmetic(Residue(a, mm), dr);
        ArithmeticOrbit row_orbit(ws, *seed.as_arithmetic());
        std::vector<std::int64_t> i(q);
        for (auto& x : i) x = static_cast<std::int64_t>(rng() % 21) - 10;
        const std::int64_t j = static_cast<std::int64_t>(rng() % 5);
        const auto want = naive.at(i, j);
        CHECK(cone_value(ws, seed, OrbitPoint{i, j}).value() == want);
        CHECK(row_orbit.at(i, j) == want);
        if (is_invertible(ws.sigma())) CHECK(closed(ws, *seed.as_arithmetic(), i, j) == want);
    }
}

TEST_CASE("cone budget") {
    Modulus m(3);
    auto w = pascal_weights(2, m);
    CHECK_THROWS_AS(cone_value(w, Seed::delta(2, m), OrbitPoint{{0, 0}, 50}, 1000), BudgetExceeded);
}

TEST_CASE("seed parsing and values") {
    Modulus m(9);
    auto ap = parse_seed("ap:2,3", m);
    std::vector<std::int64_t> i{4};
    CHECK(ap.at(i) == 5);
    auto aa = parse_seed("aa:1:2,3", m);
    CHECK(aa.dim() == 2);
    std::vector<std::int64_t> ij{1, 2};
    CHECK(aa.at(ij) == 0);
    auto delta = parse_seed("delta", m, 2);
    std::vector<std::int64_t> origin{0, 0};
    CHECK(delta.at(origin) == 1);
    CHECK(delta.at(ij) == 0);

    auto inter = Seed::interlace(Modulus(5));
    auto val = [&](std::int64_t x) {
        std::vector<std::int64_t> p{x};
        return inter.at(p);
    };
    // s(3t) = -(2t+1), s(3t+1) = s(3t+2) = t+1
    CHECK(val(0) == 4);
    CHECK(val(1) == 1);
    CHECK(val(2) == 1);
    CHECK(val(3) == 2);
    CHECK(val(-3) == 1);
    CHECK(val(-1) == 0);
    CHECK(val(-2) == 0);

    auto per = parse_seed("periodic:1,2/0,5", m);
    CHECK(per.dim() == 2);
    std::vector<std::int64_t> p{3, 1};
    CHECK(per.at(p) == 7);

    CHECK_THROWS_AS(parse_seed("ap:1", m), ParseError);
    CHECK_THROWS_AS(parse_seed("bogus", m), ParseError);
}

TEST_CASE("tabulated orbit agrees with cone values") {
    Modulus m(5);
    auto w = parse_stencil("2,1,1", m);
    auto seed = parse_seed("interlace", m);
    TabulatedOrbit t(w, seed, {-4}, {12}, 6);
    for (std::int64_t j = 0; j <= 6; ++j)
        for (std::int64_t i = -4; i <= 12; ++i) {
            std::vector<std::int64_t> sp{i};
            CHECK(t.at(sp, j) == cone_value(w, seed, OrbitPoint{sp, j}).value());
        }
    std::vector<std::int64_t> outside{13};
    CHECK_THROWS_AS(t.at(outside, 0), OutOfDomain);
    CHECK_THROWS_AS(t.at(std::vector<std::int64_t>{0}, 7), OutOfDomain);
}

TEST_CASE("explicit seeds and arrays") {
    Modulus m(4);
    Window win({0}, {3}, {1, 2, 3}, m);
    Seed strict(ExplicitSeed{win, std::nullopt}, m);
    std::vector<std::int64_t> out{5};
    CHECK_THROWS_AS(strict.at(out), OutOfDomain);
    Seed padded(ExplicitSeed{win, 0u}, m);
    CHECK(padded.at(out) == 0);

    Window grid({0, 0}, {2, 3}, {0, 1, 2, 3, 0, 1}, m);
    ExplicitArray arr(grid);
    CHECK(arr.space_dim() == 1);
    CHECK(arr.at(std::vector<std::int64_t>{1}, 2) == 1);
}
