#include <doctest.h>

#include "aca/automaton.hpp"

using namespace aca;

TEST_CASE("sigma coefficients") {
    auto w = parse_stencil("2,1,1", Modulus(5));
    CHECK(w.sigma().value() == 4);
    CHECK(w.sigma_k(1).value() == 4);

    auto pca1 = pascal_weights(1, Modulus(7));
    CHECK(std::vector<std::int64_t>(pca1.weights().begin(), pca1.weights().end()) ==
          std::vector<std::int64_t>{1, 1, 0});
    CHECK(pca1.sigma().value() == 2);
    CHECK(pca1.sigma_k(1).value() == 6);

    auto zero = WeightScheme(2, 1, std::vector<std::int64_t>(9, 0), Modulus(13));
    CHECK(zero.sigma().value() == 0);
    CHECK(zero.sigma_k(1).value() == 0);
    CHECK(zero.sigma_k(2).value() == 0);
}

TEST_CASE("Pascal automaton in two and three dimensions") {
    auto w = pascal_weights(2, Modulus(10));
    // Read with the first axis running from +1 down to -1 and the second from -1 to +1,
    // the stencil is the matrix with rows (0,0,0), (1,1,0), (0,1,0).
    const std::vector<std::vector<std::int64_t>> display{{0, 0, 0}, {1, 1, 0}, {0, 1, 0}};
    for (int row = 0; row < 3; ++row) {
        for (int col = 0; col < 3; ++col) {
            std::vector<std::int64_t> off{1 - row, col - 1};
            CHECK(w.weight(off) == display[row][col]);
        }
    }
    CHECK(w.sigma().value() == 3);

    auto w3 = pascal_weights(3, Modulus(11));
    CHECK(w3.sigma().value() == 4);
    for (unsigned k = 1; k <= 3; ++k) CHECK(w3.sigma_k(k).value() == 10);
}

TEST_CASE("stencil parsing") {
    Modulus m(9);
    auto a = parse_stencil("q=1;r=1;w=2,1,1", m);
    auto b = parse_stencil("2,1,1", m);
    CHECK(a == b);
    CHECK(parse_stencil(a.to_string(), m) == a);
    CHECK(parse_stencil("pascal:2", m) == pascal_weights(2, m));
    auto neg = parse_stencil("q=1;r=2;w=-1,0,0,0,3", m);
    CHECK(neg.sigma().value() == 2);
    CHECK(neg.sigma_k(1).value() == m.reduce(2 + 6));
    CHECK_THROWS_AS(parse_stencil("2,1", m), ParseError);
    CHECK_THROWS_AS(parse_stencil("q=2;r=1;w=1,2,3", m), ParseError);
    CHECK_THROWS_AS(parse_stencil("q=1;r=1;x=1", m), ParseError);
    CHECK_THROWS_AS(parse_stencil("q=1;r=1;w=1,a,2", m), ParseError);
}

TEST_CASE("offsets are last-axis fastest") {
    std::vector<std::int64_t> w(9);
    for (int i = 0; i < 9; ++i) w[static_cast<std::size_t>(i)] = i;
    WeightScheme s(2, 1, w, Modulus(100));
    CHECK(s.offset_of(0) == std::vector<std::int64_t>{-1, -1});
    CHECK(s.offset_of(1) == std::vector<std::int64_t>{-1, 0});
    CHECK(s.offset_of(3) == std::vector<std::int64_t>{0, -1});
    std::vector<std::int64_t> off{1, -1};
    CHECK(s.weight(off) == 6);
    std::vector<std::int64_t> bad{2, 0};
    CHECK_THROWS_AS(s.weight(bad), IndexOutOfRange);
}

TEST_CASE("single step on a window") {
    Modulus m(5);
    auto w = parse_stencil("2,1,1", m);
    Window in({0}, {7}, {0, 1, 2, 3, 4, 0, 1}, m);
    auto out = step(w, in);
    CHECK(out.origin()[0] == 1);
    CHECK(std::vector<std::uint32_t>(out.values().begin(), out.values().end()) ==
          std::vector<std::uint32_t>{3, 2, 1, 0, 4});

    Window zeros({-3}, {9}, m);
    auto z = step(w, zeros);
    for (auto v : z.values()) CHECK(v == 0);

    Modulus two(2);
    Window delta({0}, {4}, {1, 0, 0, 0}, two);
    auto p = step(pascal_weights(1, two), delta);
    // a_i + a_{i-1}: positions 1 and 2 see the 1 at position 0 only via i-1 = 0.
    CHECK(std::vector<std::uint32_t>(p.values().begin(), p.values().end()) ==
          std::vector<std::uint32_t>{1, 0});
}

TEST_CASE("step in two dimensions matches direct evaluation") {
    Modulus m(13);
    std::vector<std::int64_t> weights{1, -2, 0, 3, 5, 1, 0, 7, -1};
    WeightScheme w(2, 1, weights, m);
    Window in({-2, 4}, {6, 5}, m);
    for (std::int64_t x = -2; x < 4; ++x)
        for (std::int64_t y = 4; y < 9; ++y) {
            std::vector<std::int64_t> at{x, y};
            in.set(at, static_cast<std::uint32_t>((x * 7 + y * y) % 13 + 13) % 13);
        }
    auto out = step(w, in);
    for (std::int64_t x = -1; x < 3; ++x)
        for (std::int64_t y = 5; y < 8; ++y) {
            std::int64_t acc = 0;
            for (std::int64_t dx = -1; dx <= 1; ++dx)
                for (std::int64_t dy = -1; dy <= 1; ++dy) {
                    std::vector<std::int64_t> nb{x + dx, y + dy};
                    acc += weights[static_cast<std::size_t>((dx + 1) * 3 + dy + 1)] * in.at(nb);
                }
            std::vector<std::int64_t> at{x, y};
            CHECK(out.at(at) == m.reduce(acc));
        }
}

TEST_CASE("window errors") {
    Modulus m(3);
    CHECK_THROWS_AS(step(parse_stencil("1,1,1", m), Window({0}, {2}, m)), WindowTooSmall);
    Window w({0, 0}, {2, 2}, m);
    std::vector<std::int64_t> out{2, 0};
    CHECK_THROWS_AS(w.at(out), OutOfDomain);
    CHECK_THROWS(Window({0}, {0}, m));
}
