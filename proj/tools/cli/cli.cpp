#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "aca/arith.hpp"
#include "aca/automaton.hpp"
#include "aca/orbit.hpp"
#include "aca/search.hpp"
#include "aca/simplex.hpp"
#include "aca/verify.hpp"
#include "pgm.hpp"

namespace aca::cli {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

/// Failure lists are truncated in reports; the full count is always given.
constexpr std::size_t kMaxListedFailures = 50;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json echo_config(CLI::App* sub, const std::vector<std::string>& args) {
    json cfg;
    cfg["command"] = sub->get_name();
    for (auto* opt : sub->get_options()) {
        const auto name = opt->get_single_name();
        if (name.empty() || name.rfind("help", 0) == 0) continue;
        std::string value;
        if (opt->count() > 0) {
            const auto& res = opt->results();
            for (std::size_t i = 0; i < res.size(); ++i) value += (i ? "," : "") + res[i];
        } else {
            value = opt->get_default_str();
        }
        cfg[name] = value;
    }
    cfg["argv"] = args;
    return cfg;
}

json counts_json(const ResidueMultiset& M) {
    json counts = json::object();
    if (M.modulus().value() <= 4096) {
        const auto table = M.table();
        for (std::size_t x = 0; x < table.size(); ++x) counts[std::to_string(x)] = table[x];
    } else {
        for (const auto& [x, c] : M.support()) counts[std::to_string(x)] = c;
    }
    return counts;
}

json balance_json(const ResidueMultiset& M) {
    json j;
    j["cardinality"] = M.total();
    j["counts"] = counts_json(M);
    const auto r = is_balanced(M);
    j["balanced"] = r.balanced;
    j["witness"] = r.witness ? json::array({r.witness->first, r.witness->second}) : json(nullptr);
    return j;
}

json verdict_json(const Verdict& v) {
    json j;
    j["theorem"] = std::string(theorem_name(v.theorem));
    j["passed"] = v.passed();
    j["instances"] = v.instances;
    j["inconclusive"] = v.inconclusive;
    j["failure_count"] = v.failures.size();
    json fails = json::array();
    for (std::size_t i = 0; i < v.failures.size() && i < kMaxListedFailures; ++i) {
        fails.push_back({{"parameters", v.failures[i].parameters}, {"witness", v.failures[i].witness}});
    }
    j["failures"] = fails;
    j["notes"] = v.notes;
    j["elapsed_seconds"] = v.elapsed_seconds;
    return j;
}

/// Evaluates an orbit by the closed form sigma^j (a + i.d + j d_n).
class ClosedFormAccessor final : public OrbitAccessor {
public:
    ClosedFormAccessor(WeightScheme w, ArithmeticSeed seed) : w_(std::move(w)), seed_(std::move(seed)) {
        (void)derived_difference(w_, seed_.d);  // throws NotInvertible early
    }
    Modulus modulus() const override { return w_.modulus(); }
    unsigned space_dim() const override { return w_.dim(); }
    std::uint32_t at(std::span<const std::int64_t> space, std::int64_t time) const override {
        return closed_form(w_, seed_, OrbitPoint{{space.begin(), space.end()}, time}).value();
    }

private:
    WeightScheme w_;
    ArithmeticSeed seed_;
};

/// Space/time bounding box of a simplex: lo and hi per space axis, and time range.
struct Box {
    std::vector<std::int64_t> lo, hi;
    std::int64_t t_lo = 0, t_hi = 0;
};

Box simplex_box(const SimplexSpec& spec) {
    const unsigned n = spec.dim();
    Box b;
    for (unsigned u = 0; u < n; ++u) {
        const auto a = spec.apex[u], e = spec.apex[u] + spec.orient[u] * (spec.size - 1);
        if (u + 1 < n) {
            b.lo.push_back(std::min(a, e));
            b.hi.push_back(std::max(a, e));
        } else {
            b.t_lo = std::min(a, e);
            b.t_hi = std::max(a, e);
        }
    }
    return b;
}

std::unique_ptr<OrbitAccessor> tabulated_for(const WeightScheme& w, const Seed& seed, const SimplexSpec& spec) {
    const auto box = simplex_box(spec);
    return std::make_unique<TabulatedOrbit>(w, seed, box.lo, box.hi, box.t_hi);
}

/// Row-form evaluation for arithmetic seeds, tabulation for everything else.
std::unique_ptr<OrbitAccessor> accessor_for(const WeightScheme& w, const Seed& seed, const SimplexSpec& spec) {
    if (const auto* a = seed.as_arithmetic()) return std::make_unique<ArithmeticOrbit>(w, *a);
    return tabulated_for(w, seed, spec);
}

std::vector<int> orientation(const std::string& text) {
    try {
        return parse_orientation(text);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
}

ArithmeticSeed arithmetic_or_throw(const Seed& seed) {
    const auto* a = seed.as_arithmetic();
    if (!a) throw UsageError("this command needs an arithmetic seed (ap:a,d or aa:a:d1,...)");
    return *a;
}

std::vector<Residue> residues(const std::vector<std::int64_t>& v, Modulus m) {
    std::vector<Residue> out;
    for (auto x : v) out.emplace_back(x, m);
    return out;
}

void print_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

// -- Subcommands -------------------------------------------------------------

struct Common {
    std::uint64_t mod = 5;
    std::string weights = "pascal:1";
    std::string seed = "ap:0,1";
    std::string format = "json";
};

void add_common(CLI::App* sub, Common& c, bool with_format = true) {
    sub->add_option("--mod,-m", c.mod, "Modulus m")->capture_default_str();
    sub->add_option("--weights,-w", c.weights, "Stencil: pascal:q, q=..;r=..;w=..., or an odd list for q=1")
        ->capture_default_str();
    sub->add_option("--seed", c.seed, "Seed: ap:a,d | aa:a:d1,d2,.. | delta | interlace | periodic:...")
        ->capture_default_str();
    if (with_format) {
        sub->add_option("--format,-f", c.format, "Output format")
            ->check(CLI::IsMember({"json", "csv", "text"}))
            ->capture_default_str();
    }
}

struct OrbitOpts {
    Common c;
    std::vector<std::int64_t> from;
    std::vector<std::int64_t> width;
    std::int64_t time = 16;
    std::string method = "auto";
};

int cmd_orbit(const OrbitOpts& o, const json& cfg, std::ostream& out) {
    const Modulus m(o.c.mod);
    const auto w = parse_stencil(o.c.weights, m);
    const auto seed = parse_seed(o.c.seed, m, w.dim());
    const unsigned q = w.dim();
    auto from = o.from.empty() ? std::vector<std::int64_t>(q, 0) : o.from;
    auto width = o.width.empty() ? std::vector<std::int64_t>(q, 16) : o.width;
    if (from.size() != q || width.size() != q) throw UsageError("--from and --width need one value per space axis");
    if (o.time < 1) throw UsageError("--time must be >= 1");
    for (auto x : width)
        if (x < 1) throw UsageError("--width entries must be >= 1");

    std::string method = o.method;
    if (method == "auto") {
        const auto* a = seed.as_arithmetic();
        method = a && is_invertible(w.sigma()) ? "closed" : "cone";
    }
    std::unique_ptr<OrbitAccessor> acc;
    if (method == "closed") {
        acc = std::make_unique<ClosedFormAccessor>(w, arithmetic_or_throw(seed));
    } else {
        std::vector<std::int64_t> hi(q);
        for (unsigned k = 0; k < q; ++k) hi[k] = from[k] + width[k] - 1;
        acc = std::make_unique<TabulatedOrbit>(w, seed, from, hi, o.time - 1);
    }

    // Points in row-major order, last space axis fastest, time outermost.
    struct Cell {
        std::vector<std::int64_t> i;
        std::int64_t j;
        std::uint32_t v;
    };
    std::vector<Cell> cells;
    std::vector<std::int64_t> i(q);
    for (std::int64_t j = 0; j < o.time; ++j) {
        for (unsigned k = 0; k < q; ++k) i[k] = from[k];
        while (true) {
            cells.push_back({i, j, acc->at(i, j)});
            int k = static_cast<int>(q) - 1;
            for (; k >= 0; --k) {
                if (++i[static_cast<unsigned>(k)] < from[static_cast<unsigned>(k)] + width[static_cast<unsigned>(k)]) break;
                i[static_cast<unsigned>(k)] = from[static_cast<unsigned>(k)];
            }
            if (k < 0) break;
        }
    }

    if (o.c.format == "json") {
        json j;
        j["config"] = cfg;
        j["method"] = method;
        if (q == 1) {
            json rows = json::array();
            for (std::int64_t t = 0; t < o.time; ++t) {
                json row = json::array();
                for (std::int64_t x = 0; x < width[0]; ++x) row.push_back(cells[static_cast<std::size_t>(t * width[0] + x)].v);
                rows.push_back(row);
            }
            j["rows"] = rows;
        } else {
            json list = json::array();
            for (const auto& c : cells) list.push_back({{"i", c.i}, {"j", c.j}, {"value", c.v}});
            j["cells"] = list;
        }
        print_json(out, j);
    } else if (o.c.format == "csv") {
        for (unsigned k = 0; k < q; ++k) out << "i" << (k + 1) << ',';
        out << "j,value\n";
        for (const auto& c : cells) {
            for (auto x : c.i) out << x << ',';
            out << c.j << ',' << c.v << '\n';
        }
    } else {
        std::size_t per_row = cells.size() / static_cast<std::size_t>(o.time);
        for (std::size_t idx = 0; idx < cells.size(); ++idx) {
            out << cells[idx].v << ((idx + 1) % per_row == 0 ? '\n' : ' ');
        }
    }
    return kSuccess;
}

struct SimplexOpts {
    Common c;
    std::vector<std::int64_t> apex;
    std::string orient;
    std::int64_t size = 1;
    std::string file;
    std::vector<unsigned> antisym;
};

int cmd_simplex(const SimplexOpts& o, const json& cfg, std::ostream& out) {
    const Modulus m(o.c.mod);
    std::optional<SimplexValues> values;
    if (!o.file.empty()) {
        std::ifstream in(o.file);
        if (!in) throw IoError("cannot open " + o.file);
        std::stringstream buf;
        buf << in.rdbuf();
        values = parse_simplex_text(buf.str(), m);
    } else {
        const auto w = parse_stencil(o.c.weights, m);
        const auto seed = parse_seed(o.c.seed, m, w.dim());
        SimplexSpec spec{o.apex, orientation(o.orient), o.size};
        if (spec.apex.size() != w.dim() + 1) throw UsageError("--apex needs q + 1 coordinates (space, then time)");
        spec.validate();
        auto acc = accessor_for(w, seed, spec);
        values = extract_values(*acc, spec);
    }
    const auto M = values->multiset();
    std::optional<bool> anti;
    if (!o.antisym.empty()) {
        if (o.antisym.size() != 2) throw UsageError("--antisym expects u,v");
        anti = is_antisymmetric(*values, o.antisym[0], o.antisym[1]);
    }
    const auto bal = balance_json(M);
    if (o.c.format == "json") {
        json j;
        j["config"] = cfg;
        j["dimension"] = values->dim();
        j["size"] = values->size();
        j.update(bal);
        if (anti) j["antisymmetric"] = *anti;
        print_json(out, j);
    } else if (o.c.format == "csv") {
        out << "residue,count\n";
        const auto table = M.table();
        for (std::size_t x = 0; x < table.size(); ++x) out << x << ',' << table[x] << '\n';
    } else {
        out << "cardinality " << M.total() << "\nbalanced " << (bal["balanced"].get<bool>() ? "yes" : "no") << '\n';
        if (anti) out << "antisymmetric " << (*anti ? "yes" : "no") << '\n';
    }
    return kSuccess;
}

struct ArithOpts {
    std::uint64_t mod = 5;
    std::int64_t a = 0;
    std::vector<std::int64_t> d;
    std::int64_t size = 1;
    std::string format = "csv";
};

int cmd_arith(const ArithOpts& o, const json& cfg, std::ostream& out) {
    const Modulus m(o.mod);
    if (o.d.empty()) throw UsageError("--d needs at least one common difference");
    if (o.size < 1) throw UsageError("--size must be >= 1");
    const ArithSimplex t{Residue(o.a, m), residues(o.d, m), o.size};
    const auto M = as_multiset(t);
    if (o.format == "csv") {
        out << "residue,count\n";
        const auto table = M.table();
        for (std::size_t x = 0; x < table.size(); ++x) out << x << ',' << table[x] << '\n';
    } else if (o.format == "json") {
        json j;
        j["config"] = cfg;
        j["simplex"] = t.describe();
        j.update(balance_json(M));
        print_json(out, j);
    } else {
        out << t.describe() << '\n';
        const auto table = M.table();
        for (std::size_t x = 0; x < table.size(); ++x) out << x << ": " << table[x] << '\n';
    }
    return kSuccess;
}

struct DecomposeOpts {
    Common c;
    std::vector<std::int64_t> apex;
    std::string orient;
    std::int64_t size = 1;
    std::uint64_t alpha = 1;
    std::uint64_t rng_seed = 0x5eed;
};

int cmd_decompose(const DecomposeOpts& o, const json& cfg, std::ostream& out) {
    const Modulus m(o.c.mod);
    const auto w = parse_stencil(o.c.weights, m);
    const auto seed = arithmetic_or_throw(parse_seed(o.c.seed, m, w.dim()));
    SimplexSpec spec{o.apex, orientation(o.orient), o.size};
    const auto d = decompose(w, seed, spec, o.alpha, o.rng_seed);
    json j;
    j["config"] = cfg;
    j["alpha"] = d.alpha;
    j["t"] = d.t;
    json parts = json::array();
    for (const auto& p : d.parts) {
        parts.push_back({{"k", p.k}, {"part", p.predicted ? json(p.predicted->describe()) : json(nullptr)}});
    }
    j["parts"] = parts;
    j["exhaustive"] = d.exhaustive;
    j["cells_checked"] = d.cells_checked;
    j["mismatches"] = d.mismatches;
    j["partition_ok"] = d.partition_ok;
    j["verified"] = d.verified();
    print_json(out, j);
    return d.verified() ? kSuccess : kFailure;
}

struct CheckOpts {
    std::string theorem;
    bool list = false;
    Common c;
    unsigned n = 2;
    unsigned q = 1;
    std::string orient;
    std::size_t count = 2;
    std::size_t samples = 50;
    bool exhaustive = false;
    std::uint64_t rng_seed = 1;
    std::int64_t max_size = 0;
    std::int64_t bound = 0;
    std::int64_t a = 0;
    std::vector<std::int64_t> d;
    std::uint64_t m1 = 1, m2 = 1;
    unsigned u = 0, v = 1;
    std::int64_t max_time = 20;
};

int cmd_check(const CheckOpts& o, const json& cfg, std::ostream& out) {
    if (o.list) {
        for (auto id : all_theorems()) out << theorem_name(id) << '\n';
        return kSuccess;
    }
    const auto id = theorem_from_name(o.theorem);
    if (!id) throw UsageError("unknown theorem '" + o.theorem + "'; see check --list");
    const Modulus m(o.c.mod);
    ApexSampling apexes;
    apexes.samples = o.samples;
    apexes.exhaustive = o.exhaustive;
    apexes.rng_seed = o.rng_seed;
    auto stencil = [&] { return parse_stencil(o.c.weights, m); };
    auto seed_for = [&](const WeightScheme& w) { return arithmetic_or_throw(parse_seed(o.c.seed, m, w.dim())); };
    auto orient_for = [&](unsigned n) {
        auto eps = o.orient.empty() ? std::vector<int>(n, 1) : orientation(o.orient);
        if (eps.size() != n) throw UsageError("--orient needs " + std::to_string(n) + " signs");
        return eps;
    };
    auto max_size = [&] { return o.max_size > 0 ? o.max_size : 2 * static_cast<std::int64_t>(o.c.mod); };

    std::optional<Verdict> verdict;
    json extra;
    switch (*id) {
        case TheoremId::MainOrbit: {
            const auto w = stencil();
            verdict = verify_thm1(w, seed_for(w), orient_for(w.dim() + 1), o.count, apexes);
            break;
        }
        case TheoremId::OrbitTetraEven: {
            const auto w = stencil();
            verdict = verify_thm6(w, seed_for(w), orient_for(w.dim() + 1), o.count, apexes);
            break;
        }
        case TheoremId::AntisymTriangle: {
            const auto w = stencil();
            ApexSampling scan = apexes;
            scan.exhaustive = true;
            verdict = verify_antisym(w, seed_for(w), orient_for(2), o.count, scan);
            break;
        }
        case TheoremId::PascalCorollary:
            verdict = verify_pascal_corollary(o.n, m, orient_for(o.n), o.count, apexes);
            break;
        case TheoremId::PascalMultinomial:
            verdict = verify_pascal_multinomial(o.q, m, o.max_time);
            break;
        case TheoremId::ArithBalanced: {
            SweepOptions sw;
            sw.exhaustive = o.exhaustive;
            sw.samples = o.samples;
            sw.rng_seed = o.rng_seed;
            verdict = verify_thm2(m, o.n, sw);
            break;
        }
        case TheoremId::TriangleNecessary:
            verdict = verify_balasn2(m, max_size());
            break;
        case TheoremId::TetraNecessary:
            verdict = verify_thmarithdim2(m, max_size());
            break;
        case TheoremId::TetraMod3Impossible:
            verdict = verify_tetra_mod3(m, max_size());
            break;
        case TheoremId::TetraEven: {
            if (o.d.size() != 3) throw UsageError("--d needs d1,d2,d3");
            verdict = verify_thm5(Residue(o.a, m), Residue(o.d[0], m), Residue(o.d[1], m), Residue(o.d[2], m), o.count);
            break;
        }
        case TheoremId::SigmaNecessity: {
            const auto w = stencil();
            const auto bound = o.bound > 0 ? o.bound : sigma_necessity_threshold(w.dim() + 1) + 2;
            verdict = verify_sigma_necessity(w, seed_for(w), bound);
            break;
        }
        case TheoremId::Lemma1:
            verdict = verify_lem1(o.m1, o.m2, o.n, o.samples, o.rng_seed);
            break;
        case TheoremId::Chap1: {
            if (o.d.size() != 1) throw UsageError("--d needs one common difference");
            verdict = verify_chap1(Residue(o.a, m), Residue(o.d[0], m), o.count);
            break;
        }
        case TheoremId::Chap2:
            verdict = verify_chap2(m, max_size());
            break;
        case TheoremId::AntisymConstraints: {
            const auto w = stencil();
            const auto seed = seed_for(w);
            const auto rep = antisym_constraints(w, seed.d, orient_for(w.dim() + 1), o.u, o.v);
            json j;
            j["config"] = cfg;
            j["theorem"] = std::string(theorem_name(*id));
            json items = json::array();
            for (const auto& it : rep.items) items.push_back({{"identity", it.identity}, {"holds", it.holds}});
            j["constraints"] = items;
            j["all_hold"] = rep.all_hold();
            j["weight_form"] = rep.weight_form ? json(*rep.weight_form) : json(nullptr);
            print_json(out, j);
            return rep.all_hold() ? kSuccess : kFailure;
        }
    }
    json j;
    j["config"] = cfg;
    j.update(verdict_json(*verdict));
    print_json(out, j);
    return verdict->passed() ? kSuccess : kFailure;
}

struct SearchOpts {
    std::string kind;
    std::uint64_t mod = 5;
    std::int64_t size = 1;
    std::uint64_t shards = 1;
    std::string symmetry = "off";
    bool count_only = false;
    unsigned threads = 0;
    std::string checkpoint;
    std::string range;
    std::uint64_t limit = 1'000'000'000;
};

int cmd_search(const SearchOpts& o, const json& cfg, std::ostream& out) {
    if (o.kind != "steinhaus") throw UsageError("only `search steinhaus` is available");
    SearchOptions so;
    so.shards = o.shards;
    so.symmetry = o.symmetry == "on";
    so.count_only = o.count_only;
    so.threads = o.threads;
    so.limit = o.limit;
    if (!o.checkpoint.empty()) so.checkpoint = o.checkpoint;
    if (!o.range.empty()) {
        const auto colon = o.range.find(':');
        if (colon == std::string::npos) throw UsageError("--range expects first:last");
        try {
            so.range = std::make_pair(std::stoull(o.range.substr(0, colon)), std::stoull(o.range.substr(colon + 1)));
        } catch (const std::exception&) {
            throw UsageError("--range expects two non-negative integers");
        }
    }
    const auto start = Clock::now();
    const auto r = search_balanced(Modulus(o.mod), o.size, so);
    json j;
    j["config"] = cfg;
    j["admissible"] = r.admissible;
    if (!r.reason.empty()) j["reason"] = r.reason;
    j["count"] = r.count;
    j["visited"] = r.visited;
    j["shards"] = r.shards.size();
    j["resumed_shards"] = std::count_if(r.shards.begin(), r.shards.end(), [](const ShardReport& s) { return s.resumed; });
    if (!o.count_only) j["rows"] = r.rows;
    j["elapsed_seconds"] = seconds_since(start);
    print_json(out, j);
    return kSuccess;
}

struct RenderOpts {
    Common c;
    std::int64_t width = 64;
    std::int64_t height = 64;
    std::int64_t from = 0;
    std::string out_path;
};

int cmd_render(const RenderOpts& o, std::ostream& out) {
    const Modulus m(o.c.mod);
    const auto w = parse_stencil(o.c.weights, m);
    if (w.dim() != 1) throw UsageError("render needs a one-dimensional automaton");
    if (o.width < 1 || o.height < 1) throw UsageError("--width and --height must be >= 1");
    const auto seed = parse_seed(o.c.seed, m, 1);
    const TabulatedOrbit orbit(w, seed, {o.from}, {o.from + o.width - 1}, o.height - 1);
    const unsigned scale = m.value() > 1 ? 255 / (m.value() - 1) : 0;
    GrayImage img;
    img.width = static_cast<std::size_t>(o.width);
    img.height = static_cast<std::size_t>(o.height);
    img.pixels.reserve(img.width * img.height);
    for (std::int64_t j = 0; j < o.height; ++j) {
        for (std::int64_t i = 0; i < o.width; ++i) {
            const std::int64_t x = o.from + i;
            img.pixels.push_back(static_cast<std::uint8_t>(orbit.at(std::span(&x, 1), j) * scale));
        }
    }
    write_pgm(o.out_path, img);
    out << "wrote " << o.out_path << " (" << o.width << "x" << o.height << ")\n";
    return kSuccess;
}

struct BenchOpts {
    Common c;
    std::vector<std::int64_t> sizes{1, 50, 200};
};

int cmd_bench(const BenchOpts& o, const json& cfg, std::ostream& out) {
    const Modulus m(o.c.mod);
    const auto w = parse_stencil(o.c.weights, m);
    const auto seed = parse_seed(o.c.seed, m, w.dim());
    const auto arith = arithmetic_or_throw(seed);
    std::unique_ptr<ClosedFormAccessor> closed;
    try {
        closed = std::make_unique<ClosedFormAccessor>(w, arith);
    } catch (const NotInvertible&) {
    }
    const unsigned n = w.dim() + 1;
    bool all_equal = true;
    json rows = json::array();
    for (auto s : o.sizes) {
        if (s < 1) throw UsageError("sizes must be >= 1");
        SimplexSpec spec{std::vector<std::int64_t>(n, 0), std::vector<int>(n, 1), s};
        auto t0 = Clock::now();
        const auto cone = tabulated_for(w, seed, spec);
        const auto cone_values = extract_values(*cone, spec);
        const double cone_s = seconds_since(t0);
        json row{{"size", s}, {"cone_seconds", cone_s}};
        if (closed) {
            t0 = Clock::now();
            const auto closed_values = extract_values(*closed, spec);
            row["closed_seconds"] = seconds_since(t0);
            bool equal = true;
            for_each_simplex_index(n, s, [&](std::span<const std::int64_t> k) {
                if (closed_values.at(k) != cone_values.at(k)) equal = false;
            });
            row["equal"] = equal;
            all_equal = all_equal && equal;
        } else {
            row["closed_seconds"] = nullptr;
            row["equal"] = nullptr;
        }
        rows.push_back(row);
    }
    if (o.c.format == "json") {
        json j;
        j["config"] = cfg;
        j["closed_form_available"] = static_cast<bool>(closed);
        j["rows"] = rows;
        print_json(out, j);
    } else {
        if (!closed) out << "sigma is not invertible: closed form unavailable, cone timings only\n";
        out << std::left << std::setw(8) << "size" << std::setw(16) << "closed_ms" << std::setw(16) << "cone_ms"
            << "equal\n";
        for (const auto& r : rows) {
            auto ms = [](const json& v) {
                std::ostringstream os;
                if (v.is_null()) {
                    os << "-";
                } else {
                    os << std::fixed << std::setprecision(3) << v.get<double>() * 1000.0;
                }
                return os.str();
            };
            out << std::setw(8) << r["size"].get<std::int64_t>() << std::setw(16) << ms(r["closed_seconds"])
                << std::setw(16) << ms(r["cone_seconds"])
                << (r["equal"].is_null() ? "-" : (r["equal"].get<bool>() ? "yes" : "NO")) << '\n';
        }
    }
    return all_equal ? kSuccess : kFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"aca: additive cellular automata over Z/mZ and balanced simplices"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every command");

    OrbitOpts orbit_o;
    auto* orbit = app.add_subcommand("orbit", "Print orbit values over a box");
    add_common(orbit, orbit_o.c);
    orbit->add_option("--from", orbit_o.from, "First space index per axis (default 0)")->delimiter(',');
    orbit->add_option("--width", orbit_o.width, "Cells per space axis (default 16)")->delimiter(',');
    orbit->add_option("--time", orbit_o.time, "Number of time steps")->capture_default_str();
    orbit->add_option("--method", orbit_o.method, "Evaluation method")
        ->check(CLI::IsMember({"auto", "closed", "cone"}))
        ->capture_default_str();

    SimplexOpts simplex_o;
    auto* simplex = app.add_subcommand("simplex", "Multiset and balance of one simplex");
    add_common(simplex, simplex_o.c);
    simplex->add_option("--apex", simplex_o.apex, "Apex: space coordinates, then time")->delimiter(',');
    simplex->add_option("--orient", simplex_o.orient, "Orientation, e.g. ++ or -+");
    simplex->add_option("--size,-s", simplex_o.size, "Size")->capture_default_str();
    simplex->add_option("--file", simplex_o.file, "Read an explicit triangle or tetrahedron instead");
    simplex->add_option("--antisym", simplex_o.antisym, "Also test (u,v)-antisymmetry")->delimiter(',');

    ArithOpts arith_o;
    auto* arith = app.add_subcommand("arith", "Multiplicity table of AS(a, d, s)");
    arith->add_option("--mod,-m", arith_o.mod, "Modulus m")->capture_default_str();
    arith->add_option("--a", arith_o.a, "First term")->capture_default_str();
    arith->add_option("--d", arith_o.d, "Common differences")->delimiter(',')->required();
    arith->add_option("--size,-s", arith_o.size, "Size")->capture_default_str();
    arith->add_option("--format,-f", arith_o.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();

    DecomposeOpts dec_o;
    auto* dec = app.add_subcommand("decompose", "Split an orbit simplex into arithmetic subsimplices");
    add_common(dec, dec_o.c, false);
    dec->add_option("--apex", dec_o.apex, "Apex: space coordinates, then time")->delimiter(',')->required();
    dec->add_option("--orient", dec_o.orient, "Orientation")->required();
    dec->add_option("--size,-s", dec_o.size, "Size")->capture_default_str();
    dec->add_option("--alpha", dec_o.alpha, "Step alpha (a multiple of ord(sigma))")->capture_default_str();
    dec->add_option("--rng-seed", dec_o.rng_seed, "Seed for sampled checks")->capture_default_str();

    CheckOpts check_o;
    auto* check = app.add_subcommand("check", "Run a theorem verification suite");
    check->add_option("theorem", check_o.theorem, "Theorem id (see --list)");
    check->add_flag("--list", check_o.list, "List theorem ids");
    add_common(check, check_o.c, false);
    check->add_option("--n", check_o.n, "Simplex dimension")->capture_default_str();
    check->add_option("--q", check_o.q, "Automaton dimension (pascal-multinomial)")->capture_default_str();
    check->add_option("--orient", check_o.orient, "Orientation (default all +)");
    check->add_option("--count", check_o.count, "Number of sizes to test")->capture_default_str();
    check->add_option("--samples", check_o.samples, "Random apexes per size / random instances")->capture_default_str();
    check->add_flag("--exhaustive", check_o.exhaustive, "Enumerate instead of sampling");
    check->add_option("--rng-seed", check_o.rng_seed, "Seed of the random generator")->capture_default_str();
    check->add_option("--max-size", check_o.max_size, "Largest size for sweeps (default 2m)")->capture_default_str();
    check->add_option("--bound", check_o.bound, "Largest size (sigma-necessity)")->capture_default_str();
    check->add_option("--a", check_o.a, "First term")->capture_default_str();
    check->add_option("--d", check_o.d, "Common differences")->delimiter(',');
    check->add_option("--m1", check_o.m1, "lem1: m1")->capture_default_str();
    check->add_option("--m2", check_o.m2, "lem1: m2")->capture_default_str();
    check->add_option("--u", check_o.u, "antisym-constraints: u")->capture_default_str();
    check->add_option("--v", check_o.v, "antisym-constraints: v")->capture_default_str();
    check->add_option("--max-time", check_o.max_time, "pascal-multinomial: last time step")->capture_default_str();

    SearchOpts search_o;
    auto* search = app.add_subcommand("search", "Exhaustive search for balanced Steinhaus triangles");
    search->add_option("kind", search_o.kind, "Search family (steinhaus)")->required();
    search->add_option("--mod,-m", search_o.mod, "Modulus m")->capture_default_str();
    search->add_option("--size,-s", search_o.size, "Triangle size")->capture_default_str();
    search->add_option("--shards", search_o.shards, "Number of shards")->capture_default_str();
    search->add_option("--symmetry", search_o.symmetry, "Unit-scaling symmetry reduction")
        ->check(CLI::IsMember({"on", "off"}))
        ->capture_default_str();
    search->add_flag("--count-only", search_o.count_only, "Report the count without rows");
    search->add_option("--threads", search_o.threads, "Worker threads (0 = all cores)")->capture_default_str();
    search->add_option("--checkpoint", search_o.checkpoint, "Checkpoint file (count-only runs)");
    search->add_option("--range", search_o.range, "Row index interval first:last");
    search->add_option("--limit", search_o.limit, "Largest unsharded row space")->capture_default_str();

    RenderOpts render_o;
    auto* render = app.add_subcommand("render", "Render a one-dimensional orbit as a PGM image");
    add_common(render, render_o.c, false);
    render->add_option("--width", render_o.width, "Image width (space cells)")->capture_default_str();
    render->add_option("--height", render_o.height, "Image height (time steps)")->capture_default_str();
    render->add_option("--from", render_o.from, "First space index")->capture_default_str();
    render->add_option("--out,-o", render_o.out_path, "Output path")->required();

    BenchOpts bench_o;
    auto* bench = app.add_subcommand("bench", "Closed form versus cone evaluation timings");
    add_common(bench, bench_o.c);
    bench->add_option("--sizes", bench_o.sizes, "Simplex sizes")->delimiter(',');

    std::vector<const char*> argv{"aca"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n";
        const auto subs = app.get_subcommands();
        err << (subs.empty() ? app.help() : subs.front()->help());
        return kUsage;
    }

    CLI::App* sub = app.get_subcommands().front();
    const auto cfg = echo_config(sub, args);
    try {
        if (sub == orbit) return cmd_orbit(orbit_o, cfg, out);
        if (sub == simplex) return cmd_simplex(simplex_o, cfg, out);
        if (sub == arith) return cmd_arith(arith_o, cfg, out);
        if (sub == dec) return cmd_decompose(dec_o, cfg, out);
        if (sub == check) {
            if (check_o.theorem.empty() && !check_o.list) throw UsageError("check needs a theorem id");
            return cmd_check(check_o, cfg, out);
        }
        if (sub == search) return cmd_search(search_o, cfg, out);
        if (sub == render) return cmd_render(render_o, out);
        if (sub == bench) return cmd_bench(bench_o, cfg, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n\n" << sub->help();
        return kUsage;
    } catch (const PreconditionViolated& e) {
        err << "precondition violated: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace aca::cli
