#include "aca/orbit.hpp"

#include <cstdlib>
#include <sstream>

#include "parse_util.hpp"

namespace aca {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    auto q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

unsigned seed_dim(const Seed::Variant& v) {
    struct Visitor {
        unsigned operator()(const ArithmeticSeed& s) const { return static_cast<unsigned>(s.d.size()); }
        unsigned operator()(const DeltaSeed& s) const { return s.dim; }
        unsigned operator()(const InterlaceSeed&) const { return 1; }
        unsigned operator()(const PeriodicSeed& s) const { return static_cast<unsigned>(s.patterns.size()); }
        unsigned operator()(const ExplicitSeed& s) const { return s.window.dim(); }
    };
    return std::visit(Visitor{}, v);
}

// Saturating product used for budget accounting.
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
    return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > UINT64_MAX - b ? UINT64_MAX : a + b; }

void fill_from_seed(Window& win, const Seed& seed) {
    const unsigned q = win.dim();
    std::vector<std::int64_t> idx(win.origin().begin(), win.origin().end());
    auto vals = win.values();
    for (std::size_t f = 0; f < vals.size(); ++f) {
        vals[f] = seed.at(idx);
        for (unsigned k = q; k-- > 0;) {
            if (++idx[k] < win.origin()[k] + win.extents()[k]) break;
            idx[k] = win.origin()[k];
        }
    }
}

}  // namespace

Seed::Seed(Variant v, Modulus m) : v_(std::move(v)), mod_(m), dim_(seed_dim(v_)) {
    if (dim_ == 0) throw std::invalid_argument("seed dimension must be >= 1");
    if (auto* a = std::get_if<ArithmeticSeed>(&v_)) {
        if (!(a->a.modulus() == m)) throw std::invalid_argument("seed modulus mismatch");
        for (const auto& d : a->d) {
            if (!(d.modulus() == m)) throw std::invalid_argument("seed modulus mismatch");
        }
    } else if (auto* p = std::get_if<PeriodicSeed>(&v_)) {
        for (auto& pat : p->patterns) {
            if (pat.empty()) throw std::invalid_argument("periodic pattern must be non-empty");
            for (auto& x : pat) x = mod_.reduce_unsigned(x);
        }
    } else if (auto* e = std::get_if<ExplicitSeed>(&v_)) {
        if (!(e->window.modulus() == m)) throw std::invalid_argument("seed modulus mismatch");
        if (e->fallback) e->fallback = mod_.reduce_unsigned(*e->fallback);
    }
}

Seed Seed::arithmetic(Residue a, std::vector<Residue> d) {
    auto m = a.modulus();
    return Seed(ArithmeticSeed{a, std::move(d)}, m);
}

std::uint32_t Seed::at(std::span<const std::int64_t> i) const {
    if (i.size() != dim_) throw std::invalid_argument("seed index dimension mismatch");
    struct Visitor {
        std::span<const std::int64_t> i;
        Modulus mod;
        std::uint32_t operator()(const ArithmeticSeed& s) const {
            std::uint32_t v = s.a.value();
            for (std::size_t k = 0; k < i.size(); ++k) v = mod.add(v, mod.mul(mod.reduce(i[k]), s.d[k].value()));
            return v;
        }
        std::uint32_t operator()(const DeltaSeed&) const {
            for (auto x : i)
                if (x != 0) return 0;
            return 1 % mod.value();
        }
        std::uint32_t operator()(const InterlaceSeed&) const {
            const auto t = floor_div(i[0], 3);
            if (i[0] - 3 * t == 0) return mod.reduce(-(2 * t + 1));
            return mod.reduce(t + 1);
        }
        std::uint32_t operator()(const PeriodicSeed& s) const {
            std::uint32_t v = 0;
            for (std::size_t k = 0; k < i.size(); ++k) {
                const auto len = static_cast<std::int64_t>(s.patterns[k].size());
                auto r = i[k] % len;
                if (r < 0) r += len;
                v = mod.add(v, s.patterns[k][static_cast<std::size_t>(r)]);
            }
            return v;
        }
        std::uint32_t operator()(const ExplicitSeed& s) const {
            if (s.window.contains(i)) return s.window.values()[s.window.flat(i)];
            if (s.fallback) return *s.fallback;
            throw OutOfDomain("explicit seed has no value outside its window");
        }
    };
    return std::visit(Visitor{i, mod_}, v_);
}

std::string Seed::describe() const {
    std::ostringstream os;
    struct Visitor {
        std::ostringstream& os;
        void operator()(const ArithmeticSeed& s) const {
            if (s.d.size() == 1) {
                os << "ap:" << s.a.value() << "," << s.d[0].value();
                return;
            }
            os << "aa:" << s.a.value() << ":";
            for (std::size_t k = 0; k < s.d.size(); ++k) os << (k ? "," : "") << s.d[k].value();
        }
        void operator()(const DeltaSeed&) const { os << "delta"; }
        void operator()(const InterlaceSeed&) const { os << "interlace"; }
        void operator()(const PeriodicSeed& s) const {
            os << "periodic:";
            for (std::size_t k = 0; k < s.patterns.size(); ++k) {
                if (k) os << "/";
                for (std::size_t i = 0; i < s.patterns[k].size(); ++i) os << (i ? "," : "") << s.patterns[k][i];
            }
        }
        void operator()(const ExplicitSeed&) const { os << "explicit"; }
    };
    std::visit(Visitor{os}, v_);
    return os.str();
}

Seed parse_seed(std::string_view text, Modulus m, unsigned dim) {
    text = detail::trim(text);
    auto residues = [&](std::string_view s) {
        std::vector<Residue> out;
        for (auto v : detail::parse_int_list(s, "seed")) out.emplace_back(v, m);
        return out;
    };
    if (text == "delta") return Seed::delta(dim, m);
    if (text == "interlace") return Seed::interlace(m);
    if (text.starts_with("ap:")) {
        auto v = detail::parse_int_list(text.substr(3), "ap seed");
        if (v.size() != 2) throw ParseError("ap seed expects exactly two values: ap:a,d");
        return Seed::arithmetic(Residue(v[0], m), {Residue(v[1], m)});
    }
    if (text.starts_with("aa:")) {
        auto rest = text.substr(3);
        auto colon = rest.find(':');
        if (colon == std::string_view::npos) throw ParseError("aa seed expects aa:a:d1,d2,...");
        return Seed::arithmetic(Residue(detail::parse_int(rest.substr(0, colon), "aa seed"), m),
                                residues(rest.substr(colon + 1)));
    }
    if (text.starts_with("periodic:")) {
        PeriodicSeed p;
        for (auto axis : detail::split(text.substr(9), '/')) {
            std::vector<std::uint32_t> pat;
            for (auto v : detail::parse_int_list(axis, "periodic seed")) pat.push_back(m.reduce(v));
            p.patterns.push_back(std::move(pat));
        }
        return Seed(std::move(p), m);
    }
    throw ParseError("unknown seed: '" + std::string(text) + "'");
}

Residue derived_difference(const WeightScheme& w, std::span<const Residue> d) {
    if (d.size() != w.dim()) throw std::invalid_argument("difference count must equal automaton dimension");
    auto acc = Residue::zero(w.modulus());
    for (unsigned k = 0; k < w.dim(); ++k) acc += w.sigma_k(k + 1) * d[k];
    return inv(w.sigma()) * acc;
}

Residue closed_form(const WeightScheme& w, const ArithmeticSeed& seed, const OrbitPoint& p) {
    if (p.space.size() != w.dim()) throw std::invalid_argument("point dimension mismatch");
    if (p.time < 0) throw OutOfDomain("orbit time must be non-negative");
    const auto dn = derived_difference(w, seed.d);
    const auto m = w.modulus();
    auto inner = seed.a + Residue(p.time, m) * dn;
    for (unsigned k = 0; k < w.dim(); ++k) inner += Residue(p.space[k], m) * seed.d[k];
    return w.sigma().pow(p.time) * inner;
}

ArithmeticSeed orbit_row(const WeightScheme& w, const ArithmeticSeed& seed, std::int64_t j) {
    if (j < 0) throw OutOfDomain("orbit time must be non-negative");
    if (seed.d.size() != w.dim()) throw std::invalid_argument("difference count must equal automaton dimension");
    const auto m = w.modulus();
    if (j == 0) return seed;
    auto drift = Residue::zero(m);
    for (unsigned k = 0; k < w.dim(); ++k) drift += w.sigma_k(k + 1) * seed.d[k];
    const auto sj = w.sigma().pow(j);
    ArithmeticSeed out{sj * seed.a + Residue(j, m) * w.sigma().pow(j - 1) * drift, {}};
    for (const auto& dk : seed.d) out.d.push_back(sj * dk);
    return out;
}

std::uint64_t default_cell_budget() {
    if (const char* env = std::getenv("SIMPLEX_BUDGET")) {
        char* end = nullptr;
        auto v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return v;
    }
    return 100'000'000ull;
}

Residue cone_value(const WeightScheme& w, const Seed& seed, const OrbitPoint& p, std::uint64_t cap) {
    const unsigned q = w.dim();
    if (p.space.size() != q || seed.dim() != q) throw std::invalid_argument("point dimension mismatch");
    if (!(seed.modulus() == w.modulus())) throw std::invalid_argument("seed and stencil moduli differ");
    if (p.time < 0) throw OutOfDomain("orbit time must be non-negative");
    if (p.time == 0) return Residue(seed.at(p.space), w.modulus());

    const std::int64_t reach = p.time * static_cast<std::int64_t>(w.radius());
    std::uint64_t layer = 1;
    for (unsigned k = 0; k < q; ++k) layer = sat_mul(layer, static_cast<std::uint64_t>(2 * reach + 1));
    const auto cost = sat_mul(layer, static_cast<std::uint64_t>(p.time));
    if (cost > cap) {
        throw BudgetExceeded("dependency cone of " + std::to_string(cost) + " cells exceeds budget " +
                             std::to_string(cap));
    }

    std::vector<std::int64_t> origin(q), extents(q, 2 * reach + 1);
    for (unsigned k = 0; k < q; ++k) origin[k] = p.space[k] - reach;
    Window win(origin, extents, w.modulus());
    fill_from_seed(win, seed);
    for (std::int64_t t = 0; t < p.time; ++t) win = step(w, win);
    return Residue(win.values()[0], w.modulus());
}

ArithmeticOrbit::ArithmeticOrbit(WeightScheme w, ArithmeticSeed seed)
    : w_(std::move(w)), seed_(std::move(seed)), drift_(0) {
    if (seed_.d.size() != w_.dim()) throw std::invalid_argument("difference count must equal automaton dimension");
    if (!(seed_.a.modulus() == w_.modulus())) throw std::invalid_argument("seed and stencil moduli differ");
    auto drift = Residue::zero(w_.modulus());
    for (unsigned k = 0; k < w_.dim(); ++k) drift += w_.sigma_k(k + 1) * seed_.d[k];
    drift_ = drift.value();
}

std::uint32_t ArithmeticOrbit::at(std::span<const std::int64_t> space, std::int64_t time) const {
    if (time < 0) throw OutOfDomain("orbit time must be non-negative");
    if (space.size() != w_.dim()) throw std::invalid_argument("point dimension mismatch");
    const Modulus m = w_.modulus();
    const auto sigma = w_.sigma().value();
    // Row `time` is AA(sigma^t a + t sigma^(t-1) drift, sigma^t d).
    const auto st = m.pow(sigma, static_cast<std::uint64_t>(time));
    std::uint32_t v = m.mul(st, seed_.a.value());
    if (time > 0) {
        v = m.add(v, m.mul(m.mul(m.reduce(time), m.pow(sigma, static_cast<std::uint64_t>(time - 1))), drift_));
    }
    for (std::size_t k = 0; k < space.size(); ++k) {
        v = m.add(v, m.mul(st, m.mul(m.reduce(space[k]), seed_.d[k].value())));
    }
    return v;
}

TabulatedOrbit::TabulatedOrbit(const WeightScheme& w, const Seed& seed, std::vector<std::int64_t> lo,
                               std::vector<std::int64_t> hi, std::int64_t max_time, std::uint64_t cap)
    : mod_(w.modulus()), lo_(std::move(lo)), hi_(std::move(hi)) {
    const unsigned q = w.dim();
    if (lo_.size() != q || hi_.size() != q || seed.dim() != q) {
        throw std::invalid_argument("tabulation box dimension mismatch");
    }
    if (!(seed.modulus() == w.modulus())) throw std::invalid_argument("seed and stencil moduli differ");
    if (max_time < 0) throw OutOfDomain("orbit time must be non-negative");
    const std::int64_t r = w.radius();

    std::uint64_t total = 0;
    for (std::int64_t t = 0; t <= max_time; ++t) {
        std::uint64_t cells = 1;
        for (unsigned k = 0; k < q; ++k) {
            if (hi_[k] < lo_[k]) throw std::invalid_argument("tabulation box is empty");
            cells = sat_mul(cells, static_cast<std::uint64_t>(hi_[k] - lo_[k] + 1 + 2 * (max_time - t) * r));
        }
        total = sat_add(total, cells);
    }
    if (total > cap) {
        throw BudgetExceeded("tabulated orbit needs " + std::to_string(total) + " cells, budget " +
                             std::to_string(cap));
    }

    std::vector<std::int64_t> origin(q), extents(q);
    for (unsigned k = 0; k < q; ++k) {
        origin[k] = lo_[k] - max_time * r;
        extents[k] = hi_[k] - lo_[k] + 1 + 2 * max_time * r;
    }
    Window base(origin, extents, mod_);
    fill_from_seed(base, seed);
    layers_.reserve(static_cast<std::size_t>(max_time) + 1);
    layers_.push_back(std::move(base));
    for (std::int64_t t = 1; t <= max_time; ++t) layers_.push_back(step(w, layers_.back()));
}

std::uint32_t TabulatedOrbit::at(std::span<const std::int64_t> space, std::int64_t time) const {
    if (time < 0 || time > max_time()) throw OutOfDomain("time outside tabulated range");
    if (space.size() != lo_.size()) throw std::invalid_argument("space index dimension mismatch");
    for (std::size_t k = 0; k < space.size(); ++k) {
        if (space[k] < lo_[k] || space[k] > hi_[k]) throw OutOfDomain("space index outside tabulated box");
    }
    return layers_[static_cast<std::size_t>(time)].at(space);
}

std::uint32_t ExplicitArray::at(std::span<const std::int64_t> space, std::int64_t time) const {
    std::vector<std::int64_t> idx(space.begin(), space.end());
    idx.push_back(time);
    return values_.at(idx);
}

}  // namespace aca
