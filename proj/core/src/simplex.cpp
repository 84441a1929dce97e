#include "aca/simplex.hpp"

#include <sstream>

#include "parse_util.hpp"

namespace aca {

void SimplexSpec::validate() const {
    const auto n = apex.size();
    if (n == 0) throw std::invalid_argument("simplex needs at least one axis");
    if (orient.size() != n) throw std::invalid_argument("orientation length must equal apex length");
    for (int e : orient) {
        if (e != 1 && e != -1) throw std::invalid_argument("orientation entries must be +1 or -1");
    }
    if (size < 1) throw std::invalid_argument("simplex size must be >= 1");
    if (apex.back() < 0) throw OutOfDomain("apex time must be non-negative");
    if (orient.back() == -1 && apex.back() < size - 1) {
        throw OutOfDomain("simplex with decreasing time needs apex time >= s-1 (apex time " +
                          std::to_string(apex.back()) + ", size " + std::to_string(size) + ")");
    }
}

std::vector<int> parse_orientation(std::string_view text) {
    std::vector<int> out;
    for (char c : detail::trim(text)) {
        if (c == '+') {
            out.push_back(1);
        } else if (c == '-') {
            out.push_back(-1);
        } else {
            throw ParseError("orientation must consist of '+' and '-': " + std::string(text));
        }
    }
    if (out.empty()) throw ParseError("empty orientation");
    return out;
}

std::string orientation_string(std::span<const int> orient) {
    std::string s;
    for (int e : orient) s += e > 0 ? '+' : '-';
    return s;
}

std::string ArithSimplex::describe() const {
    std::ostringstream os;
    os << "AS(" << a.value() << ",(";
    for (std::size_t k = 0; k < d.size(); ++k) os << (k ? "," : "") << d[k].value();
    os << ")," << size << ")";
    return os.str();
}

std::uint64_t cardinality(unsigned n, std::int64_t s) {
    if (n == 0) throw std::invalid_argument("simplex dimension must be >= 1");
    if (s < 1) throw std::invalid_argument("simplex size must be >= 1");
    __extension__ unsigned __int128 c = 1;
    for (unsigned i = 1; i <= n; ++i) {
        c = c * static_cast<decltype(c)>(s - 1 + i) / i;
        if (c > UINT64_MAX) {
            throw Overflow("C(" + std::to_string(s + n - 1) + "," + std::to_string(n) + ") exceeds 64 bits");
        }
    }
    return static_cast<std::uint64_t>(c);
}

void for_each_simplex_index(unsigned n, std::int64_t s,
                            const std::function<void(std::span<const std::int64_t>)>& fn) {
    if (n == 0 || s < 1) return;
    std::vector<std::int64_t> k(n, 0);
    std::int64_t sum = 0;
    while (true) {
        fn(k);
        // Advance: bump the first coordinate that can grow, resetting the ones before it.
        unsigned u = 0;
        while (u < n) {
            if (sum < s - 1) {
                ++k[u];
                ++sum;
                break;
            }
            sum -= k[u];
            k[u] = 0;
            ++u;
        }
        if (u == n) return;
    }
}

SimplexValues::SimplexValues(unsigned n, std::int64_t s, Modulus m) : n_(n), s_(s), mod_(m) {
    if (n == 0 || s < 1) throw std::invalid_argument("simplex needs n >= 1 and s >= 1");
    std::uint64_t cube = 1;
    for (unsigned i = 0; i < n; ++i) {
        cube *= static_cast<std::uint64_t>(s);
        if (cube > (1ull << 28)) throw Overflow("simplex too large to tabulate");
    }
    cells_.assign(cube, 0);
}

std::size_t SimplexValues::index(std::span<const std::int64_t> k) const {
    if (k.size() != n_) throw std::invalid_argument("simplex index dimension mismatch");
    std::int64_t sum = 0;
    std::size_t idx = 0;
    for (unsigned u = n_; u-- > 0;) {
        if (k[u] < 0) throw IndexOutOfRange("negative simplex coordinate");
        sum += k[u];
        idx = idx * static_cast<std::size_t>(s_) + static_cast<std::size_t>(k[u]);
    }
    if (sum > s_ - 1) throw IndexOutOfRange("simplex coordinate outside the simplex");
    return idx;
}

std::uint32_t SimplexValues::at(std::span<const std::int64_t> k) const { return cells_[index(k)]; }

void SimplexValues::set(std::span<const std::int64_t> k, std::uint32_t v) {
    cells_[index(k)] = mod_.reduce_unsigned(v);
}

ResidueMultiset SimplexValues::multiset() const {
    ResidueMultiset M(mod_);
    for_each_simplex_index(n_, s_, [&](std::span<const std::int64_t> k) { M.add(at(k)); });
    return M;
}

namespace {

using ValueFn = std::function<std::uint32_t(std::span<const std::int64_t>)>;

// Value at local coordinates k of a simplex placed in an accessor.
ValueFn accessor_values(const OrbitAccessor& orbit, const SimplexSpec& spec) {
    spec.validate();
    if (orbit.space_dim() + 1 != spec.dim()) {
        throw std::invalid_argument("simplex dimension must be the orbit space dimension + 1");
    }
    return [&orbit, &spec, point = std::vector<std::int64_t>(spec.dim())](
               std::span<const std::int64_t> k) mutable {
        const auto n = spec.dim();
        for (unsigned u = 0; u < n; ++u) point[u] = spec.apex[u] + spec.orient[u] * k[u];
        return orbit.at(std::span<const std::int64_t>(point.data(), n - 1), point[n - 1]);
    };
}

ValueFn arith_values(const ArithSimplex& t) {
    return [&t](std::span<const std::int64_t> k) {
        const auto m = t.modulus();
        std::uint32_t v = t.a.value();
        for (std::size_t u = 0; u < k.size(); ++u) v = m.add(v, m.mul(m.reduce(k[u]), t.d[u].value()));
        return v;
    };
}

BoundaryPart boundary_impl(unsigned n, std::int64_t s, Modulus m, const ValueFn& value, BoundaryKind kind,
                           int first, int second) {
    const int N = static_cast<int>(n);
    BoundaryPart part{kind, first, second, ResidueMultiset(m), {}, std::nullopt};
    std::vector<std::int64_t> k(n, 0);
    auto emit = [&](bool keep_sequence) {
        auto v = value(k);
        part.multiset.add(v);
        if (keep_sequence) part.sequence.push_back(v);
    };
    switch (kind) {
        case BoundaryKind::Vertex:
            if (first < 0 || first > N) throw IndexOutOfRange("vertex index outside [0, n]");
            if (first > 0) k[first - 1] = s - 1;
            emit(true);
            break;
        case BoundaryKind::Edge:
            if (first < 0 || first > N || second < 0 || second > N || first == second) {
                throw IndexOutOfRange("edge needs two distinct vertex indices in [0, n]");
            }
            for (std::int64_t x = 0; x < s; ++x) {
                std::fill(k.begin(), k.end(), 0);
                if (first > 0) k[first - 1] += s - 1 - x;
                if (second > 0) k[second - 1] += x;
                emit(true);
            }
            break;
        case BoundaryKind::Facet:
            if (first < 0 || first > N) throw IndexOutOfRange("facet index outside [0, n]");
            for_each_simplex_index(n, s, [&](std::span<const std::int64_t> idx) {
                std::int64_t sum = 0;
                for (auto x : idx) sum += x;
                const bool in = first == 0 ? sum == s - 1 : idx[first - 1] == 0;
                if (!in) return;
                std::copy(idx.begin(), idx.end(), k.begin());
                emit(false);
            });
            break;
        case BoundaryKind::Row:
            if (first < 0 || first >= s) throw IndexOutOfRange("row index outside [0, s-1]");
            for_each_simplex_index(n, s, [&](std::span<const std::int64_t> idx) {
                if (idx[n - 1] != first) return;
                std::copy(idx.begin(), idx.end(), k.begin());
                emit(false);
            });
            break;
    }
    return part;
}

}  // namespace

ResidueMultiset extract(const OrbitAccessor& orbit, const SimplexSpec& spec) {
    auto value = accessor_values(orbit, spec);
    ResidueMultiset M(orbit.modulus());
    for_each_simplex_index(spec.dim(), spec.size, [&](std::span<const std::int64_t> k) { M.add(value(k)); });
    return M;
}

SimplexValues extract_values(const OrbitAccessor& orbit, const SimplexSpec& spec) {
    auto value = accessor_values(orbit, spec);
    SimplexValues out(spec.dim(), spec.size, orbit.modulus());
    for_each_simplex_index(spec.dim(), spec.size, [&](std::span<const std::int64_t> k) { out.set(k, value(k)); });
    return out;
}

bool is_admissible_size(Modulus m, unsigned n, std::int64_t s) {
    if (n == 0 || s < 1) throw std::invalid_argument("admissibility needs n >= 1 and s >= 1");
    const std::uint64_t mv = m.value();
    if (mv == 1) return true;
    const bool coprime = [&] {
        for (unsigned i = 2; i <= n; ++i)
            if (gcd(mv, i) != 1) return false;
        return true;
    }();
    const auto factors = factorize(mv);
    if (coprime) {
        // p > n, so at most one of s, ..., s+n-1 is divisible by p: p^k | C(s+n-1, n)
        // exactly when s = -t (mod p^k) with t in [0, n-1].
        for (const auto& pp : factors) {
            const auto r = static_cast<std::uint64_t>(s) % pp.value;
            if (r != 0 && r + (n - 1) < pp.value) return false;
        }
        return true;
    }
    // Legendre: v_p(C(N, n)) = v_p(N!) - v_p(n!) - v_p((N-n)!).
    const auto N = static_cast<std::uint64_t>(s) + n - 1;
    auto legendre = [](std::uint64_t x, std::uint64_t p) {
        std::uint64_t v = 0;
        while (x) {
            x /= p;
            v += x;
        }
        return v;
    };
    for (const auto& pp : factors) {
        const auto v = legendre(N, pp.prime) - legendre(n, pp.prime) - legendre(N - n, pp.prime);
        if (v < pp.exponent) return false;
    }
    return true;
}

std::vector<std::int64_t> admissible_sizes(Modulus m, unsigned n, std::int64_t bound) {
    std::vector<std::int64_t> out;
    for (std::int64_t s = 1; s <= bound; ++s) {
        if (is_admissible_size(m, n, s)) out.push_back(s);
    }
    return out;
}

BoundaryPart boundary(const OrbitAccessor& orbit, const SimplexSpec& spec, BoundaryKind kind, int first,
                      int second) {
    return boundary_impl(spec.dim(), spec.size, orbit.modulus(), accessor_values(orbit, spec), kind, first,
                         second);
}

BoundaryPart boundary(const ArithSimplex& t, BoundaryKind kind, int first, int second) {
    const unsigned n = t.dim();
    const auto s = t.size;
    if (n == 0 || s < 1) throw std::invalid_argument("arithmetic simplex needs n >= 1 and s >= 1");
    auto part = boundary_impl(n, s, t.modulus(), arith_values(t), kind, first, second);

    const auto m = t.modulus();
    const auto zero = Residue::zero(m);
    auto dd = [&](int i) { return i == 0 ? zero : t.d[static_cast<std::size_t>(i - 1)]; };
    auto vertex = [&](int i) { return t.a + Residue(s - 1, m) * dd(i); };
    auto single = [&](Residue v) { return ArithSimplex{v, {zero}, 1}; };

    switch (kind) {
        case BoundaryKind::Vertex:
            part.arithmetic = single(vertex(first));
            break;
        case BoundaryKind::Edge:
            part.arithmetic = ArithSimplex{vertex(first), {dd(second) - dd(first)}, s};
            break;
        case BoundaryKind::Row:
            if (n == 1) {
                part.arithmetic = single(t.a + Residue(first, m) * t.d[0]);
            } else {
                part.arithmetic = ArithSimplex{t.a + Residue(first, m) * t.d[n - 1],
                                               std::vector<Residue>(t.d.begin(), t.d.end() - 1), s - first};
            }
            break;
        case BoundaryKind::Facet:
            if (n == 1) {
                part.arithmetic = single(first == 0 ? vertex(1) : t.a);
            } else if (first == 0) {
                std::vector<Residue> d;
                for (unsigned u = 1; u < n; ++u) d.push_back(t.d[u] - t.d[0]);
                part.arithmetic = ArithSimplex{vertex(1), std::move(d), s};
            } else {
                std::vector<Residue> d;
                for (unsigned u = 0; u < n; ++u)
                    if (static_cast<int>(u) != first - 1) d.push_back(t.d[u]);
                part.arithmetic = ArithSimplex{t.a, std::move(d), s};
            }
            break;
    }
    return part;
}

bool is_antisymmetric(std::span<const std::uint32_t> seq, Modulus m) {
    const auto s = seq.size();
    for (std::size_t i = 0; i < s; ++i) {
        if (m.add(m.reduce_unsigned(seq[i]), m.reduce_unsigned(seq[s - 1 - i])) != 0) return false;
    }
    return true;
}

bool is_antisymmetric(const SimplexValues& t, unsigned u, unsigned v) {
    const unsigned n = t.dim();
    if (!(u < v && v <= n)) throw IndexOutOfRange("antisymmetry needs 0 <= u < v <= n");
    const auto m = t.modulus();
    const auto s = t.size();
    bool ok = true;
    std::vector<std::int64_t> image(n);
    for_each_simplex_index(n, s, [&](std::span<const std::int64_t> k) {
        if (!ok) return;
        std::copy(k.begin(), k.end(), image.begin());
        if (u == 0) {
            std::int64_t sum = 0;
            for (auto x : k) sum += x;
            image[v - 1] = s - 1 - sum;
        } else {
            std::swap(image[u - 1], image[v - 1]);
        }
        if (m.add(t.at(k), t.at(image)) != 0) ok = false;
    });
    return ok;
}

SimplexValues parse_simplex_text(std::string_view text, Modulus m) {
    std::vector<std::vector<std::vector<std::int64_t>>> layers(1);
    for (auto line : detail::split(text, '\n')) {
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) {
            if (!layers.back().empty()) layers.emplace_back();
            continue;
        }
        layers.back().push_back(detail::parse_int_list(line, "simplex cell"));
    }
    if (layers.back().empty()) layers.pop_back();
    if (layers.empty()) throw ParseError("no simplex data");

    auto expect = [](bool cond, const std::string& msg) {
        if (!cond) throw ParseError(msg);
    };
    if (layers.size() == 1 && layers[0].size() == 1) {
        const auto& row = layers[0][0];
        SimplexValues out(1, static_cast<std::int64_t>(row.size()), m);
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(row.size()); ++i) {
            std::int64_t k[1] = {i};
            out.set(k, m.reduce(row[static_cast<std::size_t>(i)]));
        }
        return out;
    }
    if (layers.size() == 1) {
        const auto& rows = layers[0];
        const auto s = static_cast<std::int64_t>(rows.size());
        SimplexValues out(2, s, m);
        for (std::int64_t r = 0; r < s; ++r) {
            const auto& row = rows[static_cast<std::size_t>(r)];
            expect(static_cast<std::int64_t>(row.size()) == s - r,
                   "triangle row " + std::to_string(r) + " must have " + std::to_string(s - r) + " entries");
            for (std::int64_t c = 0; c < s - r; ++c) {
                std::int64_t k[2] = {c, r};
                out.set(k, m.reduce(row[static_cast<std::size_t>(c)]));
            }
        }
        return out;
    }
    const auto s = static_cast<std::int64_t>(layers.size());
    SimplexValues out(3, s, m);
    for (std::int64_t l = 0; l < s; ++l) {
        const auto& rows = layers[static_cast<std::size_t>(l)];
        expect(static_cast<std::int64_t>(rows.size()) == s - l,
               "tetrahedron layer " + std::to_string(l) + " must have " + std::to_string(s - l) + " rows");
        for (std::int64_t r = 0; r < s - l; ++r) {
            const auto& row = rows[static_cast<std::size_t>(r)];
            expect(static_cast<std::int64_t>(row.size()) == s - l - r,
                   "tetrahedron layer " + std::to_string(l) + " row " + std::to_string(r) + " must have " +
                       std::to_string(s - l - r) + " entries");
            for (std::int64_t c = 0; c < s - l - r; ++c) {
                std::int64_t k[3] = {c, r, l};
                out.set(k, m.reduce(row[static_cast<std::size_t>(c)]));
            }
        }
    }
    return out;
}

}  // namespace aca
