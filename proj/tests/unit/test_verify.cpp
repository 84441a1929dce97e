#include <doctest.h>

#include <atomic>
#include <set>

#include "aca/verify.hpp"
#include "oracles.hpp"

using namespace aca;

namespace {

std::vector<Residue> res(std::initializer_list<std::int64_t> xs, Modulus m) {
    std::vector<Residue> out;
    for (auto x : xs) out.emplace_back(x, m);
    return out;
}

ApexSampling few(std::size_t n) {
    ApexSampling s;
    s.samples = n;
    return s;
}

}  // namespace

TEST_CASE("theorem names round-trip") {
    std::set<std::string_view> seen;
    for (auto id : all_theorems()) {
        auto name = theorem_name(id);
        CHECK(seen.insert(name).second);
        CHECK(theorem_from_name(name) == id);
    }
    CHECK(seen.count("thm1"));
    CHECK(seen.count("thm2"));
    CHECK_FALSE(theorem_from_name("nope"));
}

TEST_CASE("verdict merge keeps failures sorted") {
    Verdict a(TheoremId::MainOrbit), b(TheoremId::MainOrbit);
    a.instances = 3;
    a.failures.push_back({"z", "1"});
    b.instances = 4;
    b.failures.push_back({"a", "2"});
    a.merge(b);
    CHECK(a.instances == 7);
    REQUIRE(a.failures.size() == 2);
    CHECK(a.failures[0].parameters == "a");
    CHECK_FALSE(a.passed());
}

TEST_CASE("parallel_for visits every index once") {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; }, 4);
    for (auto& h : hits) CHECK(h.load() == 1);
    CHECK_THROWS(parallel_for(10, [](std::size_t i) {
        if (i == 7) throw std::runtime_error("boom");
    }));
}

TEST_CASE("congruent sizes") {
    std::vector<std::int64_t> offsets{0, 1};
    CHECK(congruent_sizes(20, offsets, 4) == std::vector<std::int64_t>{19, 20, 39, 40});
    std::vector<std::int64_t> zero_two{0, 2};
    CHECK(congruent_sizes(10, zero_two, 3) == std::vector<std::int64_t>{8, 10, 18});
}

TEST_CASE("main orbit hypotheses") {
    Modulus m5(5);
    auto pca1 = pascal_weights(1, m5);
    std::vector<int> pm{1, -1};
    CHECK(thm1_hypotheses(pca1, res({1}, m5), pm).ok);

    Modulus m6(6);
    auto h = thm1_hypotheses(pascal_weights(1, m6), res({1}, m6), pm);
    CHECK_FALSE(h.ok);
    REQUIRE_FALSE(h.failed.empty());
    CHECK(h.failed.front().find("gcd") != std::string::npos);

    auto pca2 = pascal_weights(2, m5);
    CHECK(derived_difference(pca2, res({1, 2}, m5)).value() == 4);
    std::vector<int> ppp{1, 1, 1};
    CHECK(thm1_hypotheses(pca2, res({1, 2}, m5), ppp).ok);
}

TEST_CASE("main orbit theorem on small instances") {
    Modulus m5(5);
    auto pca1 = pascal_weights(1, m5);
    ArithmeticSeed seed{Residue(0, m5), res({1}, m5)};
    for (auto eps : {std::vector<int>{1, 1}, std::vector<int>{1, -1}, std::vector<int>{-1, 1},
                     std::vector<int>{-1, -1}}) {
        auto v = verify_thm1(pca1, seed, eps, 2, few(20));
        CHECK(v.passed());
        CHECK(v.instances == 40);
    }
    std::vector<int> pm{1, -1}, pp{1, 1};
    auto sigma1 = verify_thm1(parse_stencil("1,0,0", m5), seed, pp, 2, few(10));
    CHECK(sigma1.passed());

    Modulus one(1);
    auto vac = verify_thm1(pascal_weights(1, one), ArithmeticSeed{Residue(0, one), res({0}, one)}, pm, 2);
    CHECK(vac.passed());

    Modulus m6(6);
    CHECK_THROWS_AS(verify_thm1(pascal_weights(1, m6), ArithmeticSeed{Residue(0, m6), res({1}, m6)}, pm, 2),
                    PreconditionViolated);
}

TEST_CASE("sizes 19 and 20 carry the predicted counts") {
    Modulus m5(5);
    ArithmeticOrbit orbit(pascal_weights(1, m5), ArithmeticSeed{Residue(0, m5), res({1}, m5)});
    auto m19 = extract(orbit, SimplexSpec{{0, 0}, {1, 1}, 19});
    auto m20 = extract(orbit, SimplexSpec{{0, 0}, {1, 1}, 20});
    CHECK(m19.table() == std::vector<std::uint64_t>(5, 38));
    CHECK(m20.table() == std::vector<std::uint64_t>(5, 42));
}

TEST_CASE("arithmetic sweeps") {
    SweepOptions opts;
    CHECK(verify_thm2(Modulus(5), 2, opts).passed());
    CHECK(verify_thm2(Modulus(7), 2, opts).passed());
    CHECK_THROWS_AS(verify_thm2(Modulus(6), 2, opts), PreconditionViolated);
    CHECK(verify_balasn2(Modulus(6), 12).passed());
    CHECK(verify_thmarithdim2(Modulus(5), 8).passed());
    CHECK(verify_thmarithdim2(Modulus(6), 10).passed());
    CHECK(verify_tetra_mod3(Modulus(6), 12).passed());
    CHECK(verify_lem1(4, 5, 2, 30).passed());
}

TEST_CASE("balanced triangles of a sweep really are balanced") {
    // Independent recount of a few balanced instances the sweep relies on.
    for (std::int64_t d1 = 1; d1 < 7; ++d1)
        for (std::int64_t d2 = 1; d2 < 7; ++d2) {
            if (d1 == d2) continue;
            CHECK(oracle::flat_counts(oracle::arith_counts(0, {d1, d2}, 7, 7)));
            CHECK(oracle::flat_counts(oracle::arith_counts(3, {d1, d2}, 6, 7)));
        }
}

TEST_CASE("even tetrahedra") {
    Modulus m10(10);
    auto v = verify_thm5(Residue(0, m10), Residue(2, m10), Residue(1, m10), Residue(3, m10), 4);
    CHECK(v.passed());
    CHECK(oracle::flat_counts(oracle::arith_counts(0, {2, 1, 3}, 10, 10)));
    CHECK(oracle::flat_counts(oracle::arith_counts(0, {2, 1, 3}, 8, 10)));
    CHECK_FALSE(oracle::flat_counts(oracle::arith_counts(0, {2, 1, 3}, 9, 10)));

    auto pca2 = pascal_weights(2, m10);
    std::vector<int> ppp{1, 1, 1};
    auto h = thm6_hypotheses(pca2, res({1, 2}, m10), ppp);
    CHECK(h.ok);
    auto t6 = verify_thm6(pca2, ArithmeticSeed{Residue(0, m10), res({1, 2}, m10)}, ppp, 2, few(5));
    CHECK(t6.passed());

    CHECK_THROWS_AS(pascal_corollary_seed(3, Modulus(12), ppp), PreconditionViolated);
    CHECK_THROWS_AS(verify_pascal_corollary(3, Modulus(12), ppp, 1), PreconditionViolated);
}

TEST_CASE("Pascal corollary on odd moduli") {
    std::vector<int> ppm{1, 1, -1};
    CHECK(verify_pascal_corollary(3, Modulus(7), ppm, 2, few(4)).passed());
    CHECK_THROWS_AS(verify_pascal_corollary(3, Modulus(5), ppm, 1), PreconditionViolated);
    std::vector<int> pm{1, -1};
    CHECK(verify_pascal_corollary(2, Modulus(11), pm, 2, few(6)).passed());
}

TEST_CASE("antisymmetric triangles") {
    Modulus m5(5);
    auto w = parse_stencil("0,1,1", m5);
    ArithmeticSeed seed{Residue(0, m5), res({1}, m5)};
    std::vector<int> pp{1, 1};
    auto v = verify_antisym(w, seed, pp, 2);
    CHECK(v.passed());
    CHECK(v.instances >= 5);
    CHECK_THROWS_AS(verify_antisym(parse_stencil("1,1,0", m5), seed, pp, 2), PreconditionViolated);

    auto c = antisym_constraints(w, res({1}, m5), pp, 0, 1);
    CHECK(c.all_hold());
    REQUIRE(c.weight_form);
    CHECK(c.weight_form->find("(0,") == 0);

    auto zeros = antisym_constraints(w, res({0}, m5), pp, 0, 1);
    CHECK(zeros.all_hold());

    auto pca2 = pascal_weights(2, Modulus(7));
    std::vector<int> ppp{1, 1, 1};
    auto uv = antisym_constraints(pca2, res({1, 3}, Modulus(7)), ppp, 1, 2);
    CHECK_FALSE(uv.all_hold());
}

TEST_CASE("sigma necessity") {
    CHECK(sigma_necessity_threshold(2) == 7);
    CHECK(sigma_necessity_threshold(3) == 9);
    Modulus m4(4);
    auto v = verify_sigma_necessity(parse_stencil("2,2,0", m4), ArithmeticSeed{Residue(1, m4), res({1}, m4)}, 9);
    CHECK(v.passed());
    CHECK_THROWS_AS(
        verify_sigma_necessity(pascal_weights(1, Modulus(5)), ArithmeticSeed{Residue(0, Modulus(5)), res({1}, Modulus(5))}, 9),
        PreconditionViolated);
}

TEST_CASE("Pascal multinomials") {
    CHECK(verify_pascal_multinomial(1, Modulus(2), 16).passed());
    CHECK(verify_pascal_multinomial(2, Modulus(7), 10).passed());
    CHECK(verify_pascal_multinomial(1, Modulus(9), 0).passed());
}
