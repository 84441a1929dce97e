// Acceptance runner: one PASS/FAIL line per criterion.
//
//   aca_acceptance            run every criterion
//   aca_acceptance 3 8        run the listed criteria
//
// Exit status is 0 when every selected criterion passes.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "aca/arith.hpp"
#include "aca/automaton.hpp"
#include "aca/orbit.hpp"
#include "aca/search.hpp"
#include "aca/simplex.hpp"
#include "aca/verify.hpp"
#include "cli.hpp"

#ifndef ACA_DATA_DIR
#define ACA_DATA_DIR "."
#endif

using namespace aca;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Criterion {
    int id;
    std::string title;
    double budget_seconds;
    std::function<Outcome()> body;
};

std::vector<Residue> residues(std::initializer_list<std::int64_t> xs, Modulus m) {
    std::vector<Residue> out;
    for (auto x : xs) out.emplace_back(x, m);
    return out;
}

std::string verdict_summary(const Verdict& v) {
    std::ostringstream os;
    os << theorem_name(v.theorem) << ": " << v.instances << " instances, " << v.failures.size() << " failures";
    if (v.inconclusive) os << ", inconclusive";
    if (!v.failures.empty()) os << " (first: " << v.failures.front().parameters << " " << v.failures.front().witness << ")";
    return os.str();
}

void absorb(Outcome& o, const Verdict& v) {
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += verdict_summary(v);
    o.pass = o.pass && v.passed();
}

// 1. Table 1 through the command-line front end.
Outcome table1() {
    std::ostringstream out, err;
    const int code = cli::run({"arith", "--mod", "12", "--a", "0", "--d", "1,5", "--size", "12"}, out, err);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    std::vector<std::uint64_t> counts;
    while (std::getline(in, line)) counts.push_back(std::stoull(line.substr(line.find(',') + 1)));
    const std::vector<std::uint64_t> want{5, 6, 7, 8, 5, 6, 7, 8, 5, 6, 7, 8};
    Outcome o;
    o.pass = code == 0 && counts == want && line.empty();
    std::ostringstream d;
    d << "exit " << code << ", counts";
    for (auto c : counts) d << ' ' << c;
    o.detail = d.str();
    return o;
}

// 2. The 16x16 orbit grid of the figure, read from a fixture transcribed from its source.
Outcome figure1() {
    const std::string path = std::string(ACA_DATA_DIR) + "/fig1_grid.txt";
    std::ifstream f(path);
    Outcome o;
    if (!f) return {false, "cannot open " + path};
    std::vector<std::vector<std::string>> grid;
    for (std::string line; std::getline(f, line);) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream fields(line);
        std::vector<std::string> row;
        for (std::string cell; fields >> cell;) row.push_back(cell);
        grid.push_back(row);
    }
    if (grid.size() != 16) return {false, "fixture must hold 16 rows"};

    const Modulus m(5);
    const auto w = parse_stencil("2,1,1", m);
    const auto seed = parse_seed("ap:0,1", m);
    const ArithmeticSeed arith = *seed.as_arithmetic();
    const TabulatedOrbit cone(w, seed, {0}, {15}, 15);

    int compared = 0, closed_bad = 0, cone_bad = 0;
    std::string first;
    for (std::int64_t j = 0; j <= 15; ++j) {
        for (std::int64_t i = 2; i <= 15; ++i) {
            const auto& cell = grid[static_cast<std::size_t>(j)].at(static_cast<std::size_t>(i));
            if (cell == ".") continue;
            const auto want = std::stoul(cell);
            const auto c = closed_form(w, arith, OrbitPoint{{i}, j}).value();
            const auto t = cone.at(std::vector<std::int64_t>{i}, j);
            ++compared;
            if (c != want) ++closed_bad;
            if (t != want) ++cone_bad;
            if ((c != want || t != want) && first.empty()) {
                first = "(i=" + std::to_string(i) + ", j=" + std::to_string(j) + "): grid " + cell + ", closed " +
                        std::to_string(c) + ", cone " + std::to_string(t);
            }
        }
    }
    o.pass = compared > 0 && closed_bad == 0 && cone_bad == 0;
    o.detail = std::to_string(compared) + " cells, " + std::to_string(closed_bad) + " closed-form and " +
               std::to_string(cone_bad) + " cone mismatches";
    if (!first.empty()) o.detail += "; first " + first;
    return o;
}

// 3. Closed form against stencil application on random stencils and points.
Outcome closed_vs_cone() {
    std::mt19937_64 rng(20240601);
    int trials = 0, mismatches = 0;
    std::string first;
    while (trials < 500) {
        const unsigned q = 1 + static_cast<unsigned>(rng() % 3);
        const unsigned r = static_cast<unsigned>(rng() % 3);
        const std::uint64_t mv = 2 + rng() % 99;
        const Modulus m(mv);
        std::size_t count = 1;
        for (unsigned k = 0; k < q; ++k) count *= 2 * r + 1;
        std::vector<std::int64_t> weights(count);
        for (auto& x : weights) x = static_cast<std::int64_t>(rng() % 2001) - 1000;
        const WeightScheme w(q, r, weights, m);
        if (!is_invertible(w.sigma())) continue;
        std::vector<Residue> d;
        for (unsigned k = 0; k < q; ++k) d.emplace_back(static_cast<std::int64_t>(rng() % mv), m);
        const ArithmeticSeed seed{Residue(static_cast<std::int64_t>(rng() % mv), m), d};
        OrbitPoint p;
        for (unsigned k = 0; k < q; ++k) p.space.push_back(static_cast<std::int64_t>(rng() % 2001) - 1000);
        p.time = static_cast<std::int64_t>(rng() % 13);
        const auto closed = closed_form(w, seed, p).value();
        const auto cone = cone_value(w, Seed::arithmetic(seed.a, seed.d), p).value();
        ++trials;
        if (closed != cone) {
            ++mismatches;
            if (first.empty()) first = w.to_string() + " m=" + std::to_string(mv);
        }
    }
    return {mismatches == 0, std::to_string(trials) + " trials, " + std::to_string(mismatches) + " mismatches" +
                                 (first.empty() ? "" : "; first " + first)};
}

// 4. Arithmetic simplices, exhaustive.
Outcome thm2_suite() {
    Outcome o;
    for (std::uint64_t m : {5u, 7u}) {
        for (unsigned n : {2u, 3u}) absorb(o, verify_thm2(Modulus(m), n, SweepOptions{}));
    }
    return o;
}

// 5. Necessary conditions for balanced arithmetic triangles and tetrahedra.
Outcome necessary_sweeps() {
    Outcome o;
    Verdict tri(TheoremId::TriangleNecessary), tetra(TheoremId::TetraNecessary);
    for (std::uint64_t m = 4; m <= 10; ++m) {
        tri.merge(verify_balasn2(Modulus(m), static_cast<std::int64_t>(2 * m)));
        tetra.merge(verify_thmarithdim2(Modulus(m), static_cast<std::int64_t>(2 * m)));
    }
    absorb(o, tri);
    absorb(o, tetra);
    return o;
}

// 6. One even tetrahedron at sizes 8, 10, 18, 20 and not at 9, 19.
Outcome thm5_instance() {
    const Modulus m(10);
    Outcome o;
    absorb(o, verify_thm5(Residue(0, m), Residue(2, m), Residue(1, m), Residue(3, m), 4));
    std::string sizes;
    for (std::int64_t s : {8, 9, 10, 18, 19, 20}) {
        const bool balanced = is_balanced(as_multiset(ArithSimplex{Residue(0, m), residues({2, 1, 3}, m), s})).balanced;
        const bool want = s % 10 != 9;
        if (balanced != want) o.pass = false;
        sizes += " " + std::to_string(s) + (balanced ? ":yes" : ":no");
    }
    o.detail += "; balanced at" + sizes;
    return o;
}

// 7. Balanced simplices in orbits of arithmetic arrays.
Outcome thm1_suite() {
    Outcome o;
    const auto t0 = Clock::now();
    ApexSampling fifty;
    fifty.samples = 50;
    for (std::uint64_t mv : {5u, 7u}) {
        const Modulus m(mv);
        const auto w = pascal_weights(1, m);
        const ArithmeticSeed seed{Residue(0, m), residues({1}, m)};
        for (auto eps : {std::vector<int>{1, 1}, std::vector<int>{1, -1}, std::vector<int>{-1, 1},
                         std::vector<int>{-1, -1}}) {
            auto v = verify_thm1(w, seed, eps, 2, fifty);
            if (v.instances < 100) o.pass = false;
            absorb(o, v);
        }
    }
    const double pca1_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    const auto t1 = Clock::now();
    const Modulus m5(5);
    ApexSampling ten;
    ten.samples = 10;
    std::vector<int> ppp{1, 1, 1};
    auto v = verify_thm1(pascal_weights(2, m5), ArithmeticSeed{Residue(0, m5), residues({1, 2}, m5)}, ppp, 3, ten);
    if (v.instances < 30) o.pass = false;
    const std::int64_t offsets[] = {0, 1, 2};
    const auto sizes = congruent_sizes(size_period(pascal_weights(2, m5).sigma()), offsets, 3);
    if (sizes != std::vector<std::int64_t>{18, 19, 20}) o.pass = false;
    absorb(o, v);
    const double pca2_seconds = std::chrono::duration<double>(Clock::now() - t1).count();
    if (pca1_seconds >= 60.0 || pca2_seconds >= 120.0) o.pass = false;
    o.detail += "; PCA_1 " + std::to_string(pca1_seconds) + " s, PCA_2 " + std::to_string(pca2_seconds) + " s";
    return o;
}

// 8. No balanced Steinhaus triangle of size 5 mod 15 or size 6 mod 21.
Outcome steinhaus_searches() {
    Outcome o;
    const auto t0 = Clock::now();
    const auto r15 = search_balanced(Modulus(15), 5);
    const double s15 = std::chrono::duration<double>(Clock::now() - t0).count();

    // Independent enumeration of all 15^5 rows for the small case.
    std::uint64_t brute = 0;
    std::array<std::uint32_t, 5> row{}, work{};
    for (std::uint64_t idx = 0; idx < 759375; ++idx) {
        std::uint64_t x = idx;
        for (int k = 4; k >= 0; --k) {
            row[static_cast<std::size_t>(k)] = static_cast<std::uint32_t>(x % 15);
            x /= 15;
        }
        unsigned counts[15] = {};
        work = row;
        for (std::size_t len = 5; len > 0; --len) {
            for (std::size_t i = 0; i < len; ++i) ++counts[work[i]];
            for (std::size_t i = 0; i + 1 < len; ++i) work[i] = (work[i] + work[i + 1]) % 15;
        }
        bool flat = true;
        for (auto c : counts) flat = flat && c == 1;
        brute += flat;
    }

    SearchOptions opts;
    opts.symmetry = true;
    opts.shards = 64;
    opts.count_only = true;
    const auto t1 = Clock::now();
    const auto r21 = search_balanced(Modulus(21), 6, opts);
    const double s21 = std::chrono::duration<double>(Clock::now() - t1).count();

    std::uint64_t covered = 0;
    for (const auto& sh : r21.shards) covered += sh.end - sh.start;
    o.pass = r15.admissible && r15.count == 0 && brute == 0 && s15 < 5.0 && r21.admissible && r21.count == 0 &&
             covered == 85766121ull && s21 < 600.0;
    std::ostringstream d;
    d << "15^5: " << r15.count << " balanced (" << r15.visited << " nodes, " << s15 << " s; brute force "
      << brute << "), 21^6: " << r21.count << " balanced over " << covered << " rows in " << r21.shards.size()
      << " shards (" << r21.visited << " nodes, " << s21 << " s)";
    o.detail = d.str();
    return o;
}

// 9. Steinhaus triangles over progressions and over the interlaced seed.
Outcome chap_suites() {
    Outcome o;
    absorb(o, verify_chap1(Residue(0, Modulus(3)), Residue(1, Modulus(3)), 2));
    absorb(o, verify_chap1(Residue(0, Modulus(5)), Residue(1, Modulus(5)), 2));
    absorb(o, verify_chap2(Modulus(5), 14));
    return o;
}

// 10. Key lemma and decomposition property suites.
Outcome lemma_suites() {
    std::mt19937_64 rng(77);
    int lemma_bad = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::uint64_t mv = 1 + rng() % 50;
        const Modulus m(mv);
        const unsigned n = 1 + static_cast<unsigned>(rng() % 4);
        std::vector<Residue> d;
        for (unsigned k = 0; k < n; ++k) d.emplace_back(static_cast<std::int64_t>(rng() % mv), m);
        const ArithSimplex t{Residue(static_cast<std::int64_t>(rng() % mv), m), d,
                             1 + static_cast<std::int64_t>(rng() % 30)};
        int i = static_cast<int>(rng() % (n + 1)), j = static_cast<int>(rng() % (n + 1));
        if (i == j) j = (i + 1) % static_cast<int>(n + 1);
        if (!key_lemma_check(t, std::min(i, j), std::max(i, j))) ++lemma_bad;
    }

    int decomposed = 0, dec_bad = 0;
    std::string first;
    while (decomposed < 50) {
        const unsigned q = 1 + static_cast<unsigned>(rng() % 2);
        const std::uint64_t mv = 2 + rng() % 29;
        const Modulus m(mv);
        std::size_t count = q == 1 ? 3 : 9;
        std::vector<std::int64_t> weights(count);
        for (auto& x : weights) x = static_cast<std::int64_t>(rng() % mv);
        const WeightScheme w(q, 1, weights, m);
        if (!is_invertible(w.sigma())) continue;
        const std::uint64_t order = ord(w.sigma());
        const std::uint64_t alpha = order * (1 + rng() % 2);
        if (alpha > 12) continue;
        const unsigned n = q + 1;
        const std::int64_t t = static_cast<std::int64_t>(rng() % n);
        std::int64_t s = static_cast<std::int64_t>(alpha) * (1 + static_cast<std::int64_t>(rng() % 3)) - t;
        if (s < 1) s += static_cast<std::int64_t>(alpha);
        std::vector<Residue> d;
        for (unsigned k = 0; k < q; ++k) d.emplace_back(static_cast<std::int64_t>(rng() % mv), m);
        SimplexSpec spec;
        for (unsigned k = 0; k < q; ++k) spec.apex.push_back(static_cast<std::int64_t>(rng() % 40) - 20);
        for (unsigned k = 0; k < n; ++k) spec.orient.push_back(rng() % 2 ? 1 : -1);
        spec.apex.push_back(spec.orient.back() < 0 ? s - 1 + static_cast<std::int64_t>(rng() % 5)
                                                   : static_cast<std::int64_t>(rng() % 5));
        spec.size = s;
        const auto dec = decompose(w, ArithmeticSeed{Residue(static_cast<std::int64_t>(rng() % mv), m), d}, spec,
                                   alpha, rng());
        ++decomposed;
        if (!dec.verified()) {
            ++dec_bad;
            if (first.empty()) first = w.to_string() + " alpha=" + std::to_string(alpha);
        }
    }
    return {lemma_bad == 0 && dec_bad == 0,
            "key lemma 200 instances, " + std::to_string(lemma_bad) + " false; decomposition " +
                std::to_string(decomposed) + " instances, " + std::to_string(dec_bad) + " failed" +
                (first.empty() ? "" : " (first " + first + ")")};
}

// 11. Delta seed under the Pascal automaton.
Outcome multinomials() {
    Outcome o;
    for (unsigned q : {1u, 2u})
        for (std::uint64_t m : {2u, 7u}) absorb(o, verify_pascal_multinomial(q, Modulus(m), 20));
    return o;
}

// 12. Antisymmetric triangles in the orbit of W = (0,1,1).
Outcome antisym_suite() {
    Outcome o;
    for (std::uint64_t mv : {5u, 7u}) {
        const Modulus m(mv);
        const auto w = parse_stencil("0,1,1", m);
        Verdict per_m(TheoremId::AntisymTriangle);
        for (auto eps : {std::vector<int>{1, 1}, std::vector<int>{-1, -1}}) {
            per_m.merge(verify_antisym(w, ArithmeticSeed{Residue(0, m), residues({1}, m)}, eps, 2));
        }
        if (per_m.instances < 5) per_m.inconclusive = true;
        absorb(o, per_m);
    }
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all{
        {1, "Table 1 reproduction", 1, table1},
        {2, "Figure 1 orbit fixture", 1, figure1},
        {3, "closed form equals cone evaluation", 30, closed_vs_cone},
        {4, "arithmetic simplex suite (m in {5,7}, n in {2,3})", 120, thm2_suite},
        {5, "necessary-condition sweeps (m = 4..10, s <= 2m)", 300, necessary_sweeps},
        {6, "even tetrahedron (2,1,3) mod 10", 10, thm5_instance},
        {7, "orbit simplex suite (PCA_1 and PCA_2)", 180, thm1_suite},
        {8, "Steinhaus counterexamples 15/5 and 21/6", 605, steinhaus_searches},
        {9, "progression and interlace Steinhaus triangles", 60, chap_suites},
        {10, "key lemma and decomposition suites", 60, lemma_suites},
        {11, "Pascal multinomials", 10, multinomials},
        {12, "antisymmetric triangles of W = (0,1,1)", 120, antisym_suite},
    };

    std::vector<int> wanted;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "all") continue;
        try {
            wanted.push_back(std::stoi(arg));
        } catch (const std::exception&) {
            std::cerr << "usage: " << argv[0] << " [all | criterion ids 1-12...]\n";
            return 2;
        }
    }

    bool ok = true;
    for (const auto& c : all) {
        if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
        const auto start = Clock::now();
        Outcome out;
        try {
            out = c.body();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(Clock::now() - start).count();
        if (secs > c.budget_seconds) {
            out.pass = false;
            out.detail += "; over the " + std::to_string(static_cast<int>(c.budget_seconds)) + " s budget";
        }
        char head[64];
        std::snprintf(head, sizeof head, "%s criterion %2d", out.pass ? "PASS" : "FAIL", c.id);
        std::printf("%s: %s [%.3f s] %s\n", head, c.title.c_str(), secs, out.detail.c_str());
        ok = ok && out.pass;
    }
    std::fflush(stdout);
    return ok ? 0 : 1;
}
