#include "aca/arith.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace aca {

namespace {

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
    auto q = a / b;
    if (a % b != 0 && ((a > 0) == (b > 0))) ++q;
    return q;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    auto q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

ResidueMultiset as_multiset(const ArithSimplex& t) {
    const unsigned n = t.dim();
    const auto s = t.size;
    (void)cardinality(n, s);
    const Modulus m = t.modulus();
    ResidueMultiset M(m);

    // Walk the compositions keeping the running value a + sum k_u d_u.
    std::vector<std::int64_t> k(n, 0);
    std::vector<std::uint32_t> d(n);
    for (unsigned u = 0; u < n; ++u) d[u] = t.d[u].value();
    std::uint32_t v = t.a.value();
    std::int64_t sum = 0;
    while (true) {
        M.add(v);
        unsigned u = 0;
        while (u < n) {
            if (sum < s - 1) {
                ++k[u];
                ++sum;
                v = m.add(v, d[u]);
                break;
            }
            v = m.sub(v, m.mul(m.reduce(k[u]), d[u]));
            sum -= k[u];
            k[u] = 0;
            ++u;
        }
        if (u == n) break;
    }
    return M;
}

std::vector<ArithSimplex> equivalent_forms(const ArithSimplex& t) {
    const unsigned n = t.dim();
    const auto m = t.modulus();
    std::vector<ArithSimplex> out;
    for (unsigned root = 0; root <= n; ++root) {
        auto dd = [&](unsigned i) { return i == 0 ? Residue::zero(m) : t.d[i - 1]; };
        const auto apex = t.a + Residue(t.size - 1, m) * dd(root);
        std::vector<Residue> diffs;
        for (unsigned j = 0; j <= n; ++j)
            if (j != root) diffs.push_back(dd(j) - dd(root));
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        do {
            ArithSimplex f{apex, {}, t.size};
            for (auto p : perm) f.d.push_back(diffs[p]);
            out.push_back(std::move(f));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return out;
}

EuclideanSplit euclidean_split(std::int64_t s, Modulus m) {
    if (s < 0) throw std::invalid_argument("size must be non-negative");
    const std::int64_t mv = m.value();
    return {s / mv, s % mv};
}

DegenerateTable analytic_degenerate(Residue a, Residue d, std::int64_t s) {
    if (s < 1) throw std::invalid_argument("size must be >= 1");
    const auto m = a.modulus();
    if (!is_invertible(d) && m.value() != 1) throw NotInvertible(d.value(), m.value(), gcd_with_modulus(d));
    const std::int64_t mv = m.value();
    const auto split = euclidean_split(s, m);
    DegenerateTable out{split, {}, ResidueMultiset(m), true};
    const std::int64_t base = split.lambda * (split.lambda + 1) / 2 * mv;
    for (std::int64_t i = 0; i < mv; ++i) {
        const std::int64_t v = base + ceil_div(s - i, mv) * (split.mu - i);
        out.by_step.push_back(static_cast<std::uint64_t>(v));
        out.multiset.add((a + Residue(i, m) * d).value(), static_cast<std::uint64_t>(v));
        if (i > 0 && !(out.by_step[i] < out.by_step[i - 1])) out.strictly_decreasing = false;
    }
    return out;
}

Period2Table analytic_period2(Residue a, Residue d1, Residue d2, std::int64_t s) {
    const auto m = a.modulus();
    const std::int64_t mv = m.value();
    if (s < 1) throw PreconditionViolated("size must be >= 1");
    if (!is_invertible(d2)) throw PreconditionViolated("d2 is not invertible");
    if (!is_invertible(d2 - d1)) throw PreconditionViolated("d2 - d1 is not invertible");
    if (s % mv != 0 && (s + 1) % mv != 0) throw PreconditionViolated("size is not 0 or -1 modulo m");

    const auto g = static_cast<std::int64_t>(gcd_with_modulus(d1));
    // Doubled to keep (g-1)/2 integral: 2 m(a + i d2) = s(s+1)/m + ceil(s/m)(g - 1 - 2i).
    const std::int64_t base2 = s * (s + 1) / mv;
    const std::int64_t c = ceil_div(s, mv);
    Period2Table out{static_cast<std::uint64_t>(g), {}, ResidueMultiset(m)};
    for (std::int64_t i = 0; i < g; ++i) {
        const std::int64_t twice = base2 + c * (g - 1 - 2 * i);
        if (twice < 0 || twice % 2 != 0) throw std::logic_error("period-2 multiplicity is not a whole number");
        out.by_step.push_back(static_cast<std::uint64_t>(twice / 2));
    }
    // Each class mod g holds exactly one a + i d2 with i in [0, g-1].
    const Modulus gm(static_cast<std::uint64_t>(g));
    const auto d2_inv_g = g == 1 ? 0u : inv(Residue(d2.value(), gm)).value();
    for (std::int64_t x = 0; x < mv; ++x) {
        const auto i = gm.mul(gm.reduce(x - static_cast<std::int64_t>(a.value())), d2_inv_g);
        out.multiset.add(static_cast<std::uint32_t>(x), out.by_step[i]);
    }
    return out;
}

bool key_lemma_check(const ArithSimplex& t, int i, int j) {
    const int n = static_cast<int>(t.dim());
    if (!(0 <= i && i < j && j <= n)) throw IndexOutOfRange("key lemma needs 0 <= i < j <= n");
    const auto m = t.modulus();
    const auto M = as_multiset(t).table();
    const auto Fi = boundary(t, BoundaryKind::Facet, i).multiset.table();
    const auto Fj = boundary(t, BoundaryKind::Facet, j).multiset.table();
    const std::uint32_t di = i == 0 ? 0 : t.d[static_cast<std::size_t>(i - 1)].value();
    const std::uint32_t dj = t.d[static_cast<std::size_t>(j - 1)].value();
    for (std::uint32_t x = 0; x < m.value(); ++x) {
        const auto xi = m.add(x, di), xj = m.add(x, dj);
        const auto lhs = static_cast<std::int64_t>(M[xj]) - static_cast<std::int64_t>(M[xi]);
        const auto rhs = static_cast<std::int64_t>(Fj[xj]) - static_cast<std::int64_t>(Fi[xi]);
        if (lhs != rhs) return false;
    }
    return true;
}

Decomposition decompose(const WeightScheme& w, const ArithmeticSeed& seed, const SimplexSpec& spec,
                        std::uint64_t alpha, std::uint64_t rng_seed) {
    spec.validate();
    const unsigned n = spec.dim();
    if (n != w.dim() + 1) throw std::invalid_argument("simplex dimension must be the automaton dimension + 1");
    const auto m = w.modulus();
    const auto sigma = w.sigma();
    if (!is_invertible(sigma) && m.value() != 1) throw PreconditionViolated("sigma is not invertible");
    if (alpha == 0) throw PreconditionViolated("alpha must be positive");
    if (alpha % ord(sigma) != 0) {
        throw PreconditionViolated("alpha = " + std::to_string(alpha) + " is not a multiple of ord(sigma) = " +
                                   std::to_string(ord(sigma)));
    }
    const auto A = static_cast<std::int64_t>(alpha);
    const std::int64_t s = spec.size;
    const std::int64_t t = ((-s) % A + A) % A;
    if (t > static_cast<std::int64_t>(n) - 1) {
        throw PreconditionViolated("size " + std::to_string(s) + " is not -t modulo alpha for t in [0, n-1]");
    }
    std::uint64_t part_count = 1;
    for (unsigned u = 0; u < n; ++u) {
        if (part_count > (1ull << 24) / alpha) throw PreconditionViolated("alpha^n is too large");
        part_count *= alpha;
    }

    std::vector<Residue> dt(seed.d.begin(), seed.d.end());
    dt.push_back(derived_difference(w, seed.d));
    const ArithmeticOrbit orbit(w, seed);
    const std::int64_t top = ceil_div(s, A);

    Decomposition out;
    out.alpha = alpha;
    out.t = t;
    out.parts.reserve(part_count);

    std::vector<std::int64_t> k(n, 0), point(n);
    std::uint64_t predicted_total = 0;
    for (std::uint64_t idx = 0; idx < part_count; ++idx) {
        auto rem = idx;
        std::int64_t sum = 0;
        for (unsigned u = 0; u < n; ++u) {
            k[u] = static_cast<std::int64_t>(rem % alpha);
            rem /= alpha;
            sum += k[u];
        }
        DecompositionPart part{k, std::nullopt};
        const std::int64_t size = top - floor_div(sum + t, A);
        if (size >= 1) {
            for (unsigned u = 0; u < n; ++u) point[u] = spec.apex[u] + spec.orient[u] * k[u];
            const auto apex_value = Residue(orbit.at(std::span(point.data(), n - 1), point[n - 1]), m);
            const auto scale = Residue(A, m) * sigma.pow(point[n - 1]);
            ArithSimplex p{apex_value, {}, size};
            for (unsigned u = 0; u < n; ++u) p.d.push_back(scale * Residue(spec.orient[u], m) * dt[u]);
            predicted_total += cardinality(n, size);
            part.predicted = std::move(p);
        }
        out.parts.push_back(std::move(part));
    }

    const auto total = cardinality(n, s);
    // Predicted value of a cell: which part it belongs to and where inside it.
    auto predicted_value = [&](std::span<const std::int64_t> kk) -> std::optional<std::uint32_t> {
        std::uint64_t idx = 0, mul = 1;
        for (unsigned u = 0; u < n; ++u) {
            idx += static_cast<std::uint64_t>(kk[u] % A) * mul;
            mul *= alpha;
        }
        const auto& part = out.parts[idx].predicted;
        if (!part) return std::nullopt;
        std::uint32_t v = part->a.value();
        std::int64_t lsum = 0;
        for (unsigned u = 0; u < n; ++u) {
            const auto l = kk[u] / A;
            lsum += l;
            v = m.add(v, m.mul(m.reduce(l), part->d[u].value()));
        }
        if (lsum > part->size - 1) return std::nullopt;
        return v;
    };
    auto actual_value = [&](std::span<const std::int64_t> kk) {
        for (unsigned u = 0; u < n; ++u) point[u] = spec.apex[u] + spec.orient[u] * kk[u];
        return orbit.at(std::span(point.data(), n - 1), point[n - 1]);
    };

    if (total <= 10'000'000ull) {
        out.exhaustive = true;
        ResidueMultiset whole(m), pieces(m);
        for_each_simplex_index(n, s, [&](std::span<const std::int64_t> kk) {
            const auto actual = actual_value(kk);
            whole.add(actual);
            const auto pred = predicted_value(kk);
            ++out.cells_checked;
            if (!pred || *pred != actual) ++out.mismatches;
        });
        for (const auto& part : out.parts) {
            if (part.predicted) pieces.merge(as_multiset(*part.predicted));
        }
        out.partition_ok = predicted_total == total && pieces == whole;
    } else {
        std::mt19937_64 rng(rng_seed);
        std::vector<std::int64_t> kk(n);
        for (int sample = 0; sample < 10'000; ++sample) {
            // Uniform point of the cube rejected until it lands in the simplex.
            std::int64_t sum;
            do {
                sum = 0;
                for (unsigned u = 0; u < n; ++u) {
                    kk[u] = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(s));
                    sum += kk[u];
                }
            } while (sum > s - 1);
            const auto pred = predicted_value(kk);
            ++out.cells_checked;
            if (!pred || *pred != actual_value(kk)) ++out.mismatches;
        }
        out.partition_ok = predicted_total == total;
    }
    return out;
}

}  // namespace aca
