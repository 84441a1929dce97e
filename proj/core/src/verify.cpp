#include "aca/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

namespace aca {

namespace {

struct NameEntry {
    TheoremId id;
    std::string_view name;
};

constexpr NameEntry kNames[] = {
    {TheoremId::MainOrbit, "thm1"},
    {TheoremId::ArithBalanced, "thm2"},
    {TheoremId::TriangleNecessary, "balasn2"},
    {TheoremId::TetraNecessary, "thmarithdim2"},
    {TheoremId::TetraMod3Impossible, "tetra-mod3"},
    {TheoremId::TetraEven, "thm5"},
    {TheoremId::OrbitTetraEven, "thm6"},
    {TheoremId::AntisymTriangle, "thm7"},
    {TheoremId::SigmaNecessity, "sigma-necessity"},
    {TheoremId::PascalCorollary, "pascal-corollary"},
    {TheoremId::PascalMultinomial, "pascal-multinomial"},
    {TheoremId::Lemma1, "lem1"},
    {TheoremId::Chap1, "chap1"},
    {TheoremId::Chap2, "chap2"},
    {TheoremId::AntisymConstraints, "antisym-constraints"},
};

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::string tuple_string(std::span<const std::int64_t> v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ")";
    return os.str();
}

std::string witness_string(const BalanceReport& r, const ResidueMultiset& M) {
    if (!r.witness) return "cardinality not divisible by m";
    std::ostringstream os;
    os << "count(" << r.witness->first << ")=" << M.count(r.witness->first) << " count(" << r.witness->second
       << ")=" << M.count(r.witness->second);
    return os.str();
}

bool coprime_to_factorial(std::uint64_t m, unsigned n) {
    for (unsigned i = 2; i <= n; ++i)
        if (gcd(m, i) != 1) return false;
    return true;
}

// Full difference vector (d_1, ..., d_q, d_n) of an orbit, the last one derived.
std::vector<Residue> full_differences(const WeightScheme& w, std::span<const Residue> d) {
    std::vector<Residue> out(d.begin(), d.end());
    out.push_back(derived_difference(w, d));
    return out;
}

struct OrbitTask {
    std::int64_t size;
    std::vector<std::int64_t> apex;
};

// Apexes for orbit verifiers. The orbit of an arithmetic array repeats with
// period m along every space axis and with period `time_period` in time.
std::vector<OrbitTask> orbit_tasks(unsigned q, std::uint64_t m, std::uint64_t time_period,
                                   std::span<const std::int64_t> sizes, std::span<const int> eps,
                                   const ApexSampling& sampling) {
    std::vector<OrbitTask> tasks;
    const bool back_in_time = eps.back() < 0;
    std::mt19937_64 rng(sampling.rng_seed);
    const auto P = static_cast<std::int64_t>(time_period);
    for (auto s : sizes) {
        const std::int64_t t0 = back_in_time ? s - 1 : 0;
        if (sampling.exhaustive) {
            std::vector<std::int64_t> apex(q + 1, 0);
            apex[q] = t0;
            while (true) {
                tasks.push_back({s, apex});
                unsigned u = 0;
                for (; u <= q; ++u) {
                    const std::int64_t hi = u < q ? static_cast<std::int64_t>(m) : t0 + P;
                    if (++apex[u] < hi) break;
                    apex[u] = u < q ? 0 : t0;
                }
                if (u > q) break;
            }
        } else {
            const std::int64_t R = sampling.space_radius > 0 ? sampling.space_radius : P;
            const std::int64_t T = sampling.time_span > 0 ? sampling.time_span : 2 * P;
            std::uniform_int_distribution<std::int64_t> space(-R, R), time(0, T - 1);
            for (std::size_t i = 0; i < sampling.samples; ++i) {
                std::vector<std::int64_t> apex(q + 1);
                for (unsigned u = 0; u < q; ++u) apex[u] = space(rng);
                apex[q] = t0 + time(rng);
                tasks.push_back({s, std::move(apex)});
            }
        }
    }
    return tasks;
}

// Extracts every task's simplex and records unbalanced ones.
void check_orbit_balance(const OrbitAccessor& orbit, std::span<const int> eps, const std::vector<OrbitTask>& tasks,
                         Verdict& v) {
    std::vector<std::optional<Failure>> slots(tasks.size());
    parallel_for(tasks.size(), [&](std::size_t i) {
        SimplexSpec spec{tasks[i].apex, {eps.begin(), eps.end()}, tasks[i].size};
        auto M = extract(orbit, spec);
        auto r = is_balanced(M);
        if (!r) {
            slots[i] = Failure{"s=" + std::to_string(spec.size) + " apex=" + tuple_string(spec.apex) +
                                   " eps=" + orientation_string(eps),
                               witness_string(r, M)};
        }
    });
    v.instances += tasks.size();
    for (auto& f : slots)
        if (f) v.failures.push_back(std::move(*f));
    std::sort(v.failures.begin(), v.failures.end());
}

// Edges of the tetrahedron with vertices 0..3: (0,u) carries e_u d_u and
// (u,v) carries e_v d_v - e_u d_u.
struct TetraEdge {
    int u, v;
    Residue value;
};

std::vector<TetraEdge> tetra_edges(std::span<const Residue> ed) {
    std::vector<TetraEdge> out;
    const auto m = ed[0].modulus();
    auto at = [&](int i) { return i == 0 ? Residue::zero(m) : ed[static_cast<std::size_t>(i - 1)]; };
    for (int u = 0; u <= 3; ++u)
        for (int v = u + 1; v <= 3; ++v) out.push_back({u, v, at(v) - at(u)});
    return out;
}

bool opposite(const TetraEdge& a, const TetraEdge& b) {
    return a.u != b.u && a.u != b.v && a.v != b.u && a.v != b.v;
}

std::string edge_name(const TetraEdge& e) {
    return e.u == 0 ? "e" + std::to_string(e.v) + "d" + std::to_string(e.v)
                    : "e" + std::to_string(e.v) + "d" + std::to_string(e.v) + "-e" + std::to_string(e.u) + "d" +
                          std::to_string(e.u);
}

// Even-m structure: all edges invertible except one opposite pair of gcd 2.
// Returns the non-invertible pair when the structure holds.
std::optional<std::pair<TetraEdge, TetraEdge>> even_structure(const std::vector<TetraEdge>& edges) {
    std::vector<TetraEdge> bad;
    for (const auto& e : edges)
        if (!is_invertible(e.value)) bad.push_back(e);
    if (bad.size() != 2 || !opposite(bad[0], bad[1])) return std::nullopt;
    if (gcd_with_modulus(bad[0].value) != 2 || gcd_with_modulus(bad[1].value) != 2) return std::nullopt;
    return std::make_pair(bad[0], bad[1]);
}

void require(const HypothesisReport& r) {
    if (!r.ok) throw PreconditionViolated(join(r.failed, "; "));
}

}  // namespace

std::string_view theorem_name(TheoremId id) {
    for (const auto& e : kNames)
        if (e.id == id) return e.name;
    return "unknown";
}

std::optional<TheoremId> theorem_from_name(std::string_view name) {
    for (const auto& e : kNames)
        if (e.name == name) return e.id;
    return std::nullopt;
}

std::vector<TheoremId> all_theorems() {
    std::vector<TheoremId> out;
    for (const auto& e : kNames) out.push_back(e.id);
    return out;
}

Verdict& Verdict::merge(const Verdict& other) {
    instances += other.instances;
    elapsed_seconds += other.elapsed_seconds;
    inconclusive = inconclusive || other.inconclusive;
    failures.insert(failures.end(), other.failures.begin(), other.failures.end());
    std::sort(failures.begin(), failures.end());
    notes.insert(notes.end(), other.notes.begin(), other.notes.end());
    return *this;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn, unsigned threads) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            while (true) {
                const auto i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                    next = count;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

std::vector<std::int64_t> congruent_sizes(std::uint64_t period, std::span<const std::int64_t> offsets,
                                          std::size_t count) {
    std::vector<std::int64_t> out;
    if (period == 0 || count == 0) return out;
    const auto P = static_cast<std::int64_t>(period);
    for (std::int64_t block = 1; out.size() < count; ++block) {
        std::vector<std::int64_t> batch;
        for (auto t : offsets) {
            const auto s = block * P - t;
            if (s >= 1 && (batch.empty() || std::find(batch.begin(), batch.end(), s) == batch.end()))
                batch.push_back(s);
        }
        std::sort(batch.begin(), batch.end());
        for (auto s : batch) {
            if (out.size() < count && (out.empty() || s > out.back())) out.push_back(s);
        }
        if (block > static_cast<std::int64_t>(count) + 2 && out.empty()) break;
    }
    return out;
}

HypothesisReport thm1_hypotheses(const WeightScheme& w, std::span<const Residue> d, std::span<const int> eps) {
    HypothesisReport r;
    const unsigned n = w.dim() + 1;
    const auto m = w.modulus();
    if (d.size() != w.dim()) throw std::invalid_argument("need one common difference per space axis");
    if (eps.size() != n) throw std::invalid_argument("orientation length must be q + 1");
    if (!coprime_to_factorial(m.value(), n)) r.fail("gcd(m, n!) != 1");
    if (!is_invertible(w.sigma())) {
        r.fail("sigma = " + std::to_string(w.sigma().value()) + " is not invertible");
        return r;
    }
    const auto dt = full_differences(w, d);
    r.notes.push_back("d_n = " + std::to_string(dt.back().value()));
    for (unsigned i = 0; i < n; ++i) {
        if (!is_invertible(dt[i])) r.fail("d_" + std::to_string(i + 1) + " = " + std::to_string(dt[i].value()) + " is not invertible");
    }
    for (unsigned i = 0; i < n; ++i) {
        for (unsigned j = i + 1; j < n; ++j) {
            const auto diff = Residue(eps[j], m) * dt[j] - Residue(eps[i], m) * dt[i];
            if (!is_invertible(diff)) {
                r.fail("e" + std::to_string(j + 1) + "d" + std::to_string(j + 1) + " - e" + std::to_string(i + 1) +
                       "d" + std::to_string(i + 1) + " = " + std::to_string(diff.value()) + " is not invertible");
            }
        }
    }
    return r;
}

Verdict verify_thm1(const WeightScheme& w, const ArithmeticSeed& seed, std::span<const int> eps,
                    std::size_t size_count, const ApexSampling& apexes) {
    Stopwatch clock;
    Verdict v{TheoremId::MainOrbit};
    const auto m = w.modulus();
    if (m.value() == 1) {
        v.notes.push_back("m = 1: every multiset is balanced");
        return v;
    }
    require(thm1_hypotheses(w, seed.d, eps));
    const unsigned n = w.dim() + 1;
    const auto P = size_period(w.sigma());
    std::vector<std::int64_t> offsets;
    for (unsigned t = 0; t < n; ++t) offsets.push_back(t);
    const auto sizes = congruent_sizes(P, offsets, size_count);
    v.notes.push_back("size period " + std::to_string(P));
    ArithmeticOrbit orbit(w, seed);
    check_orbit_balance(orbit, eps, orbit_tasks(w.dim(), m.value(), P, sizes, eps, apexes), v);
    v.elapsed_seconds = clock.seconds();
    return v;
}

HypothesisReport thm6_hypotheses(const WeightScheme& w, std::span<const Residue> d, std::span<const int> eps) {
    HypothesisReport r;
    const auto m = w.modulus();
    if (w.dim() != 2 || d.size() != 2 || eps.size() != 3) {
        r.fail("tetrahedra need a two-dimensional automaton");
        return r;
    }
    if (m.value() % 2 != 0) r.fail("m is odd");
    if (m.value() % 3 == 0) r.fail("3 divides m");
    if (!is_invertible(w.sigma())) {
        r.fail("sigma is not invertible");
        return r;
    }
    const auto pow2 = std::uint64_t{1} << v2(m);
    if (w.sigma().value() % pow2 != 1 % pow2) {
        r.fail("sigma is not 1 modulo 2^v2(m) = " + std::to_string(pow2));
    }
    const auto dt = full_differences(w, d);
    std::vector<Residue> ed;
    for (unsigned u = 0; u < 3; ++u) ed.push_back(Residue(eps[u], m) * dt[u]);
    const auto edges = tetra_edges(ed);
    auto pair = even_structure(edges);
    if (!pair) {
        r.fail("the six differences are not all invertible except one opposite pair of gcd 2");
        return r;
    }
    const auto& [p, q] = *pair;
    const bool literal = (p.u == 0 && p.v == 1) || (q.u == 0 && q.v == 1);
    r.notes.push_back("non-invertible opposite pair: " + edge_name(p) + ", " + edge_name(q));
    if (!literal) {
        r.notes.push_back("pair differs from (e1d1, e3d3-e2d2); accepted because arithmetic tetrahedra are "
                          "invariant under relabelling their vertices");
    }
    return r;
}

Verdict verify_thm6(const WeightScheme& w, const ArithmeticSeed& seed, std::span<const int> eps,
                    std::size_t size_count, const ApexSampling& apexes) {
    Stopwatch clock;
    Verdict v{TheoremId::OrbitTetraEven};
    auto h = thm6_hypotheses(w, seed.d, eps);
    require(h);
    v.notes = h.notes;
    const auto P = size_period(w.sigma());
    const std::int64_t offsets[] = {0, 2};
    const auto sizes = congruent_sizes(P, offsets, size_count);
    v.notes.push_back("size period " + std::to_string(P));
    ArithmeticOrbit orbit(w, seed);
    check_orbit_balance(orbit, eps, orbit_tasks(2, w.modulus().value(), P, sizes, eps, apexes), v);
    v.elapsed_seconds = clock.seconds();
    return v;
}

ArithmeticSeed pascal_corollary_seed(unsigned n, Modulus m, std::span<const int> eps) {
    if (n < 2) throw PreconditionViolated("Pascal corollaries need n >= 2");
    if (eps.size() != n) throw std::invalid_argument("orientation length must be n");
    std::vector<std::int64_t> d(n - 1);
    for (unsigned k = 1; k <= n - 1; ++k) d[k - 1] = k;
    auto same_as_time = [&](unsigned l) { return eps[l - 1] == eps[n - 1]; };
    bool special = true;  // +...+- or -...-+
    for (unsigned k = 1; k < n; ++k) special = special && !same_as_time(k);
    const auto mv = m.value();

    if (mv % 2 == 0) {
        if (n != 3) throw PreconditionViolated("even m is only covered for tetrahedra");
        if (v2(m) != 1) throw PreconditionViolated("v2(m) must be 1");
        if (mv % 3 == 0) throw PreconditionViolated("3 divides m");
        if (special && mv % 5 == 0) throw PreconditionViolated("5 divides m (needed for ++- and --+)");
        if (same_as_time(1)) {
            d = {1, 2};
        } else if (same_as_time(2)) {
            d = {2, 1};
        } else {
            d = {4, 5};
        }
    } else {
        const unsigned bound = !special ? 3 * (n - 1) : (n % 2 == 0 ? n : (3 * n + 1) / 2);
        if (!coprime_to_factorial(mv, bound)) {
            throw PreconditionViolated("gcd(m, " + std::to_string(bound) + "!) != 1");
        }
        if (n % 2 == 1) {
            unsigned l = 0;
            for (unsigned k = 1; k <= n - 1 && l == 0; ++k)
                if (same_as_time(k)) l = k;
            if (l != 0) {
                std::swap(d[l - 1], d[(n - 1) / 2 - 1]);
            } else {
                d[(n + 1) / 2 - 1] = (3 * static_cast<std::int64_t>(n) + 1) / 2;
            }
        }
    }
    ArithmeticSeed seed{Residue::zero(m), {}};
    for (auto x : d) seed.d.emplace_back(x, m);
    return seed;
}

Verdict verify_pascal_corollary(unsigned n, Modulus m, std::span<const int> eps, std::size_t size_count,
                                const ApexSampling& apexes) {
    const auto w = pascal_weights(n - 1, m);
    const auto seed = pascal_corollary_seed(n, m, eps);
    Verdict v{TheoremId::PascalCorollary};
    const auto inner = m.value() % 2 == 0 ? verify_thm6(w, seed, eps, size_count, apexes)
                                          : verify_thm1(w, seed, eps, size_count, apexes);
    v.merge(inner);
    v.notes.insert(v.notes.begin(), "seed " + Seed(seed, m).describe());
    return v;
}

Verdict verify_antisym(const WeightScheme& w, const ArithmeticSeed& seed, std::span<const int> eps,
                       std::size_t size_count, const ApexSampling& apexes) {
    Stopwatch clock;
    Verdict v{TheoremId::AntisymTriangle};
    const auto m = w.modulus();
    if (w.dim() != 1 || eps.size() != 2) throw PreconditionViolated("antisymmetric triangles need q = 1");
    if (m.value() % 2 == 0) throw PreconditionViolated("m must be odd");
    if (!is_invertible(w.sigma())) throw PreconditionViolated("sigma is not invertible");
    if (!is_invertible(seed.d[0])) throw PreconditionViolated("d is not invertible");
    const bool mirror = eps[0] != eps[1];
    const auto sigma1 = w.sigma_k(1);
    const auto required = Residue(mirror ? -2 : 2, m) * sigma1;
    if (!(w.sigma() == required)) {
        throw PreconditionViolated(std::string("sigma != ") + (mirror ? "-2" : "2") +
                                   " sigma_1, so 2 e_2 d_2 = e_1 d_1 fails and no (0,1)-antisymmetric "
                                   "triangle of this orientation exists");
    }
    if (mirror) v.notes.push_back("mirror statement (sigma = -2 sigma_1, orientations -+ and +-)");

    const auto P = lcm(pord(w.sigma()), m.value());
    const std::int64_t offsets[] = {0, 1};
    const auto sizes = congruent_sizes(P, offsets, size_count);
    v.notes.push_back("size period " + std::to_string(P));

    ApexSampling scan = apexes;
    const auto full_period = size_period(w.sigma());
    const auto tasks = orbit_tasks(1, m.value(), full_period, sizes, eps, scan);
    ArithmeticOrbit orbit(w, seed);
    std::vector<int> antisym(tasks.size(), 0);
    std::vector<std::optional<Failure>> slots(tasks.size());
    parallel_for(tasks.size(), [&](std::size_t i) {
        SimplexSpec spec{tasks[i].apex, {eps.begin(), eps.end()}, tasks[i].size};
        auto values = extract_values(orbit, spec);
        if (!is_antisymmetric(values, 0, 1)) return;
        antisym[i] = 1;
        auto M = values.multiset();
        auto r = is_balanced(M);
        if (!r) {
            slots[i] = Failure{"s=" + std::to_string(spec.size) + " apex=" + tuple_string(spec.apex) +
                                   " eps=" + orientation_string(eps),
                               witness_string(r, M)};
        }
    });
    std::uint64_t found = 0;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        found += static_cast<std::uint64_t>(antisym[i]);
        if (slots[i]) v.failures.push_back(std::move(*slots[i]));
    }
    std::sort(v.failures.begin(), v.failures.end());
    v.instances = found;
    v.notes.push_back("scanned " + std::to_string(tasks.size()) + " triangles, " + std::to_string(found) +
                      " (0,1)-antisymmetric");
    if (found == 0) v.inconclusive = true;
    v.elapsed_seconds = clock.seconds();
    return v;
}

bool ConstraintReport::all_hold() const noexcept {
    return std::all_of(items.begin(), items.end(), [](const Item& i) { return i.holds; });
}

ConstraintReport antisym_constraints(const WeightScheme& w, std::span<const Residue> d, std::span<const int> eps,
                                     unsigned u, unsigned v) {
    const unsigned n = w.dim() + 1;
    const auto m = w.modulus();
    if (!(u < v && v <= n)) throw IndexOutOfRange("antisymmetry needs 0 <= u < v <= n");
    if (d.size() != w.dim() || eps.size() != n) throw std::invalid_argument("dimension mismatch");
    ConstraintReport rep;
    if (!is_invertible(w.sigma())) {
        rep.items.push_back({"sigma invertible (needed for d_n)", false});
        return rep;
    }
    const auto dt = full_differences(w, d);
    auto ed = [&](unsigned i) { return Residue(eps[i - 1], m) * dt[i - 1]; };
    auto idx = [](unsigned i) { return std::to_string(i); };
    if (u >= 1) {
        for (unsigned k = 1; k <= n; ++k) {
            if (k == u || k == v) continue;
            rep.items.push_back({"d_" + idx(k) + " = 0", dt[k - 1].value() == 0});
        }
        rep.items.push_back({"e" + idx(u) + "d" + idx(u) + " + e" + idx(v) + "d" + idx(v) + " = 0",
                             (ed(u) + ed(v)).value() == 0});
    } else {
        for (unsigned k = 1; k <= n; ++k) {
            if (k == v) continue;
            rep.items.push_back({"2 e" + idx(k) + "d" + idx(k) + " = e" + idx(v) + "d" + idx(v),
                                 Residue(2, m) * ed(k) == ed(v)});
        }
        if (n == 2 && v == 1) {
            const int sign = eps[0] * eps[1];
            rep.items.push_back({"sigma = " + std::string(sign > 0 ? "2" : "-2") + " sigma_1",
                                 w.sigma() == Residue(2 * sign, m) * w.sigma_k(1)});
            rep.weight_form = "(0," + std::to_string(2 * sign - 1) + "*s',s') with s' = sigma_1 = " +
                              std::to_string(w.sigma_k(1).value());
        }
    }
    return rep;
}

std::int64_t sigma_necessity_threshold(unsigned n) { return (5 * static_cast<std::int64_t>(n) + 3 + 1) / 2; }

Verdict verify_sigma_necessity(const WeightScheme& w, const ArithmeticSeed& seed, std::int64_t bound) {
    Stopwatch clock;
    Verdict v{TheoremId::SigmaNecessity};
    const auto m = w.modulus();
    if (m.value() == 1 || is_invertible(w.sigma())) throw PreconditionViolated("sigma is invertible");
    const unsigned q = w.dim(), n = q + 1;
    const auto lo = sigma_necessity_threshold(n);
    ArithmeticOrbit orbit(w, seed);
    // Rows depend on time only through sigma^j and j mod m; past a few steps
    // sigma^j is eventually periodic, so 2*bound + 2m rows cover every shape.
    const auto time_period = static_cast<std::uint64_t>(2 * bound + 2 * m.value());
    std::vector<std::int64_t> sizes;
    for (auto s = lo; s <= bound; ++s) sizes.push_back(s);
    ApexSampling all;
    all.exhaustive = true;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> eps(n);
        for (unsigned u = 0; u < n; ++u) eps[u] = (mask >> u) & 1u ? -1 : 1;
        const auto tasks = orbit_tasks(q, m.value(), time_period, sizes, eps, all);
        std::vector<std::optional<Failure>> slots(tasks.size());
        parallel_for(tasks.size(), [&](std::size_t i) {
            SimplexSpec spec{tasks[i].apex, eps, tasks[i].size};
            if (is_balanced(extract(orbit, spec))) {
                slots[i] = Failure{"s=" + std::to_string(spec.size) + " apex=" + tuple_string(spec.apex) +
                                       " eps=" + orientation_string(eps),
                                   "balanced although sigma is not invertible"};
            }
        });
        v.instances += tasks.size();
        for (auto& f : slots)
            if (f) v.failures.push_back(std::move(*f));
    }
    std::sort(v.failures.begin(), v.failures.end());
    v.notes.push_back("sizes " + std::to_string(lo) + ".." + std::to_string(bound));
    v.elapsed_seconds = clock.seconds();
    return v;
}

Verdict verify_pascal_multinomial(unsigned q, Modulus m, std::int64_t max_time) {
    Stopwatch clock;
    Verdict v{TheoremId::PascalMultinomial};
    if (max_time < 0) throw std::invalid_argument("max_time must be >= 0");
    const auto w = pascal_weights(q, m);
    const auto seed = Seed::delta(q, m);
    std::vector<std::int64_t> lo(q, -2), hi(q, max_time + 2);
    TabulatedOrbit orbit(w, seed, lo, hi, max_time);

    // Binomials mod m by Pascal's rule.
    const auto J = static_cast<std::size_t>(max_time);
    std::vector<std::vector<std::uint32_t>> C(J + 1);
    for (std::size_t j = 0; j <= J; ++j) {
        C[j].assign(j + 1, 1 % m.value());
        for (std::size_t i = 1; i < j; ++i) C[j][i] = m.add(C[j - 1][i - 1], C[j - 1][i]);
    }
    std::vector<std::int64_t> i(q);
    for (std::int64_t t = 0; t <= max_time; ++t) {
        std::fill(i.begin(), i.end(), -2);
        while (true) {
            // Multinomial t! / (i_1! ... i_q! (t - sum i)!) as a product of binomials.
            std::uint32_t expected = 1 % m.value();
            std::int64_t left = t;
            for (unsigned k = 0; k < q && expected != 0; ++k) {
                if (i[k] < 0 || i[k] > left) {
                    expected = 0;
                } else {
                    expected = m.mul(expected, C[static_cast<std::size_t>(left)][static_cast<std::size_t>(i[k])]);
                    left -= i[k];
                }
            }
            const auto got = orbit.at(i, t);
            ++v.instances;
            if (got != expected) {
                v.failures.push_back({"i=" + tuple_string(i) + " j=" + std::to_string(t),
                                      "orbit " + std::to_string(got) + " multinomial " + std::to_string(expected)});
            }
            unsigned k = 0;
            for (; k < q; ++k) {
                if (++i[k] <= max_time + 2) break;
                i[k] = -2;
            }
            if (k == q) break;
        }
    }
    std::sort(v.failures.begin(), v.failures.end());
    v.elapsed_seconds = clock.seconds();
    return v;
}

Verdict verify_thm2(Modulus m, unsigned n, const SweepOptions& opts) {
    Stopwatch clock;
    Verdict v{TheoremId::ArithBalanced};
    const auto mv = static_cast<std::int64_t>(m.value());
    if (n < 1) throw PreconditionViolated("n must be >= 1");
    if (!coprime_to_factorial(m.value(), n)) throw PreconditionViolated("gcd(m, n!) != 1");

    std::vector<std::int64_t> sizes;
    for (std::int64_t block = 1; block <= 2; ++block)
        for (std::int64_t t = static_cast<std::int64_t>(n) - 1; t >= 0; --t)
            if (block * mv - t >= 1) sizes.push_back(block * mv - t);

    auto valid = [&](const std::vector<Residue>& d) {
        for (unsigned i = 0; i < n; ++i) {
            if (!is_invertible(d[i])) return false;
            for (unsigned j = i + 1; j < n; ++j)
                if (!is_invertible(d[j] - d[i])) return false;
        }
        return true;
    };

    std::vector<std::vector<Residue>> ds;
    if (opts.exhaustive) {
        std::vector<std::int64_t> raw(n, 0);
        while (true) {
            std::vector<Residue> d;
            for (auto x : raw) d.emplace_back(x, m);
            if (valid(d)) ds.push_back(std::move(d));
            unsigned k = 0;
            for (; k < n; ++k) {
                if (++raw[k] < mv) break;
                raw[k] = 0;
            }
            if (k == n) break;
        }
    } else {
        std::mt19937_64 rng(opts.rng_seed);
        for (std::size_t tries = 0; ds.size() < opts.samples && tries < 100 * opts.samples + 1000; ++tries) {
            std::vector<Residue> d;
            for (unsigned k = 0; k < n; ++k) d.emplace_back(static_cast<std::int64_t>(rng() % m.value()), m);
            if (valid(d)) ds.push_back(std::move(d));
        }
    }

    const std::int64_t a_count = opts.all_offsets ? mv : 1;
    struct Task {
        std::size_t d;
        std::int64_t a, s;
    };
    std::vector<Task> tasks;
    for (std::size_t i = 0; i < ds.size(); ++i)
        for (std::int64_t a = 0; a < a_count; ++a)
            for (auto s : sizes) tasks.push_back({i, a, s});
    std::vector<std::optional<Failure>> slots(tasks.size());
    parallel_for(tasks.size(), [&](std::size_t i) {
        const auto& t = tasks[i];
        ArithSimplex as{Residue(t.a, m), ds[t.d], t.s};
        auto M = as_multiset(as);
        auto r = is_balanced(M);
        if (!r) slots[i] = Failure{as.describe(), witness_string(r, M)};
    });
    v.instances = tasks.size();
    for (auto& f : slots)
        if (f) v.failures.push_back(std::move(*f));
    std::sort(v.failures.begin(), v.failures.end());
    if (tasks.empty()) v.inconclusive = true;
    v.notes.push_back(std::to_string(ds.size()) + " difference vectors");
    v.elapsed_seconds = clock.seconds();
    return v;
}

namespace {

// Calls fn(d, s, balanced) for all d in (Z/mZ)^n and 1 <= s <= max_size. Sizes
// are grown one layer at a time: AS(0,d,s+1) is AS(0,d,s) plus the cells with
// sum k = s.
void sweep_arith(Modulus m, unsigned n, std::int64_t max_size,
                 const std::function<void(const std::vector<Residue>&, std::int64_t, const ResidueMultiset&)>& fn) {
    const auto mv = static_cast<std::int64_t>(m.value());
    std::uint64_t total = 1;
    for (unsigned k = 0; k < n; ++k) total *= static_cast<std::uint64_t>(mv);
    std::vector<std::vector<std::pair<std::int64_t, ResidueMultiset>>> results(total);
    parallel_for(total, [&](std::size_t idx) {
        std::vector<std::uint32_t> d(n);
        auto rem = idx;
        for (unsigned k = 0; k < n; ++k) {
            d[k] = static_cast<std::uint32_t>(rem % static_cast<std::size_t>(mv));
            rem /= static_cast<std::size_t>(mv);
        }
        ResidueMultiset M(m);
        for (std::int64_t s = 1; s <= max_size; ++s) {
            // Layer sum k = s-1.
            for_each_simplex_index(n, s, [&](std::span<const std::int64_t> k) {
                std::int64_t sum = 0;
                for (auto x : k) sum += x;
                if (sum != s - 1) return;
                std::uint32_t val = 0;
                for (unsigned u = 0; u < n; ++u) val = m.add(val, m.mul(m.reduce(k[u]), d[u]));
                M.add(val);
            });
            results[idx].emplace_back(s, M);
        }
    });
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::vector<Residue> d;
        auto rem = idx;
        for (unsigned k = 0; k < n; ++k) {
            d.emplace_back(static_cast<std::int64_t>(rem % static_cast<std::size_t>(mv)), m);
            rem /= static_cast<std::size_t>(mv);
        }
        for (const auto& [s, M] : results[idx]) fn(d, s, M);
    }
}

}  // namespace

Verdict verify_balasn2(Modulus m, std::int64_t max_size) {
    Stopwatch clock;
    Verdict v{TheoremId::TriangleNecessary};
    std::uint64_t balanced = 0;
    sweep_arith(m, 2, max_size, [&](const std::vector<Residue>& d, std::int64_t s, const ResidueMultiset& M) {
        ++v.instances;
        if (!is_balanced(M)) return;
        ++balanced;
        if (!is_invertible(d[0]) || !is_invertible(d[1]) || !is_invertible(d[1] - d[0])) {
            v.failures.push_back({ArithSimplex{Residue::zero(m), d, s}.describe(),
                                  "balanced with a non-invertible common difference"});
        }
    });
    std::sort(v.failures.begin(), v.failures.end());
    v.notes.push_back(std::to_string(balanced) + " balanced triangles");
    v.elapsed_seconds = clock.seconds();
    return v;
}

Verdict verify_thmarithdim2(Modulus m, std::int64_t max_size) {
    Stopwatch clock;
    Verdict v{TheoremId::TetraNecessary};
    std::uint64_t balanced = 0;
    const bool odd = m.value() % 2 == 1;
    sweep_arith(m, 3, max_size, [&](const std::vector<Residue>& d, std::int64_t s, const ResidueMultiset& M) {
        ++v.instances;
        if (!is_balanced(M)) return;
        ++balanced;
        const auto edges = tetra_edges(d);
        bool ok;
        if (odd) {
            ok = std::all_of(edges.begin(), edges.end(), [](const TetraEdge& e) { return is_invertible(e.value); });
        } else {
            ok = even_structure(edges).has_value();
        }
        if (!ok) {
            v.failures.push_back({ArithSimplex{Residue::zero(m), d, s}.describe(),
                                  odd ? "balanced with a non-invertible difference"
                                      : "balanced without the opposite gcd-2 pair structure"});
        }
    });
    std::sort(v.failures.begin(), v.failures.end());
    v.notes.push_back(std::to_string(balanced) + " balanced tetrahedra");
    v.elapsed_seconds = clock.seconds();
    return v;
}

Verdict verify_tetra_mod3(Modulus m, std::int64_t max_size) {
    Stopwatch clock;
    Verdict v{TheoremId::TetraMod3Impossible};
    if (m.value() % 3 != 0) throw PreconditionViolated("3 does not divide m");
    sweep_arith(m, 3, max_size, [&](const std::vector<Residue>& d, std::int64_t s, const ResidueMultiset& M) {
        ++v.instances;
        if (is_balanced(M)) v.failures.push_back({ArithSimplex{Residue::zero(m), d, s}.describe(), "balanced"});
    });
    std::sort(v.failures.begin(), v.failures.end());
    v.elapsed_seconds = clock.seconds();
    return v;
}

Verdict verify_thm5(Residue a, Residue d1, Residue d2, Residue d3, std::size_t size_count) {
    Stopwatch clock;
    Verdict v{TheoremId::TetraEven};
    const auto m = a.modulus();
    const auto mv = m.value();
    HypothesisReport h;
    if (mv % 2 != 0) h.fail("m is odd");
    if (mv % 3 == 0) h.fail("3 divides m");
    if (gcd_with_modulus(d1) != 2) h.fail("gcd(d1, m) != 2");
    if (gcd_with_modulus(d3 - d2) != 2) h.fail("gcd(d3 - d2, m) != 2");
    if (!is_invertible(d2)) h.fail("d2 is not invertible");
    if (!is_invertible(d3)) h.fail("d3 is not invertible");
    if (!is_invertible(d2 - d1)) h.fail("d2 - d1 is not invertible");
    if (!is_invertible(d1 - d3)) h.fail("d1 - d3 is not invertible");
    require(h);

    const std::int64_t offsets[] = {0, 2};
    const auto sizes = congruent_sizes(mv, offsets, size_count);
    const std::vector<Residue> d{d1, d2, d3};
    for (auto s : sizes) {
        ArithSimplex t{a, d, s};
        auto M = as_multiset(t);
        auto r = is_balanced(M);
        ++v.instances;
        if (!r) v.failures.push_back({t.describe(), "expected balanced: " + witness_string(r, M)});
    }
    const auto top = sizes.empty() ? 0 : sizes.back();
    for (std::int64_t s = static_cast<std::int64_t>(mv) - 1; s <= top; s += static_cast<std::int64_t>(mv)) {
        ArithSimplex t{a, d, s};
        ++v.instances;
        if (is_balanced(as_multiset(t))) v.failures.push_back({t.describe(), "expected not balanced at s = -1 mod m"});
    }
    std::sort(v.failures.begin(), v.failures.end());
    v.elapsed_seconds = clock.seconds();
    return v;
}

Verdict verify_lem1(std::uint64_t m1, std::uint64_t m2, unsigned n, std::size_t samples, std::uint64_t rng_seed) {
    Stopwatch clock;
    Verdict v{TheoremId::Lemma1};
    if (m1 == 0 || m2 == 0) throw PreconditionViolated("m1 and m2 must be positive");
    if (!coprime_to_factorial(m2, n)) throw PreconditionViolated("gcd(m2, n!) != 1");
    const Modulus m(m1 * m2), mm2(m2);
    std::mt19937_64 rng(rng_seed);
    std::size_t attempts = 0;
    while (v.instances < samples && attempts < 1000 * samples + 1000) {
        ++attempts;
        std::vector<Residue> d;
        for (unsigned k = 0; k < n; ++k) d.emplace_back(static_cast<std::int64_t>(rng() % m.value()), m);
        bool ok = true;
        for (unsigned i = 0; i < n && ok; ++i) {
            ok = is_invertible(Residue(d[i].value(), mm2));
            for (unsigned j = i + 1; j < n && ok; ++j)
                ok = is_invertible(Residue(static_cast<std::int64_t>(d[j].value()) - d[i].value(), mm2));
        }
        if (!ok) continue;
        const auto lambda = static_cast<std::int64_t>(1 + rng() % 3);
        const auto t = static_cast<std::int64_t>(rng() % n);
        const auto s = lambda * static_cast<std::int64_t>(m2) - t;
        if (s < 1) continue;
        ArithSimplex as{Residue(static_cast<std::int64_t>(rng() % m.value()), m), {}, s};
        for (const auto& x : d) as.d.push_back(Residue(static_cast<std::int64_t>(m1), m) * x);
        ++v.instances;
        if (!has_period(as_multiset(as), m1)) {
            v.failures.push_back({as.describe() + " m=" + std::to_string(m.value()),
                                  "multiplicity not periodic with step " + std::to_string(m1)});
        }
    }
    std::sort(v.failures.begin(), v.failures.end());
    if (v.instances == 0) v.inconclusive = true;
    v.elapsed_seconds = clock.seconds();
    return v;
}

}  // namespace aca
