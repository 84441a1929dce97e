#include "aca/search.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include "aca/orbit.hpp"
#include "aca/simplex.hpp"

namespace aca {

__extension__ typedef unsigned __int128 u128;

ResidueMultiset SteinhausTriangle::multiset() const {
    ResidueMultiset M(mod);
    for (const auto& row : rows)
        for (auto x : row) M.add(x);
    return M;
}

SteinhausTriangle steinhaus(std::span<const std::int64_t> first_row, Modulus m) {
    if (first_row.empty()) throw OutOfDomain("a Steinhaus triangle needs at least one entry");
    SteinhausTriangle t{m, {}};
    std::vector<std::uint32_t> row;
    for (auto x : first_row) row.push_back(m.reduce(x));
    while (!row.empty()) {
        std::vector<std::uint32_t> next;
        for (std::size_t i = 0; i + 1 < row.size(); ++i) next.push_back(m.add(row[i], row[i + 1]));
        t.rows.push_back(std::move(row));
        row = std::move(next);
    }
    return t;
}

std::uint64_t row_index(std::span<const std::uint32_t> row, Modulus m) {
    std::uint64_t idx = 0;
    for (auto x : row) idx = idx * m.value() + x;
    return idx;
}

std::vector<std::uint32_t> row_from_index(std::uint64_t index, std::int64_t size, Modulus m) {
    std::vector<std::uint32_t> row(static_cast<std::size_t>(size));
    for (auto k = size; k-- > 0;) {
        row[static_cast<std::size_t>(k)] = static_cast<std::uint32_t>(index % m.value());
        index /= m.value();
    }
    return row;
}

namespace {

// Depth-first search over first rows. Appending entry k to a row of length k
// adds the anti-diagonal T[r][k-r], r = 0..k, computed from the previous one:
// T[r][k-r] = T[r-1][k-r] + T[r-1][k-r+1].
class ShardSearch {
public:
    ShardSearch(Modulus m, std::int64_t s, bool symmetry, bool collect)
        : m_(m), s_(static_cast<std::size_t>(s)), symmetry_(symmetry), collect_(collect),
          diag_(s_, std::vector<std::uint32_t>(s_)), counts_(m.value(), 0), row_(s_),
          cap_(static_cast<std::uint64_t>(s) * static_cast<std::uint64_t>(s + 1) / 2 / m.value()) {
        pow_.assign(s_ + 1, 1);
        for (std::size_t e = 1; e <= s_; ++e) pow_[e] = pow_[e - 1] * m.value();
        for (auto g : divisors(m.value()))
            if (g < m.value()) leaders_.push_back({static_cast<std::uint32_t>(g), euler_phi(m.value() / g)});
    }

    ShardReport run(std::uint64_t lo, std::uint64_t hi) {
        lo_ = lo;
        hi_ = hi;
        report_ = ShardReport{lo, hi};
        if (lo < hi) descend(0, 0, true, 1);
        return report_;
    }

    std::vector<std::vector<std::uint32_t>> take_rows() { return std::move(rows_); }

private:
    void descend(std::size_t k, std::uint64_t prefix, bool all_zero, std::uint64_t weight) {
        if (k == s_) {
            // No residue exceeds C(s+1,2)/m and the total is m times that, so all counts agree.
            report_.count += weight;
            if (collect_) rows_.push_back(row_);
            return;
        }
        const std::uint64_t span = pow_[s_ - k - 1];
        auto visit = [&](std::uint32_t x, bool zero_after, std::uint64_t w) {
            const std::uint64_t child = prefix * m_.value() + x;
            const std::uint64_t first = child * span, last = first + span;
            if (last <= lo_ || first >= hi_) return;
            ++report_.visited;
            if (push(k, x)) descend(k + 1, child, zero_after, w);
            pop(k);
        };
        if (symmetry_ && all_zero) {
            visit(0, true, weight);
            for (const auto& [g, phi] : leaders_) visit(g, false, weight * phi);
        } else {
            for (std::uint32_t x = 0; x < m_.value(); ++x) visit(x, all_zero && x == 0, weight);
        }
    }

    // Adds the anti-diagonal for entry x at position k; false when some count overflows.
    bool push(std::size_t k, std::uint32_t x) {
        row_[k] = x;
        auto& d = diag_[k];
        d[0] = x;
        bool ok = ++counts_[x] <= cap_;
        for (std::size_t r = 1; r <= k; ++r) {
            d[r] = m_.add(diag_[k - 1][r - 1], d[r - 1]);
            ok = (++counts_[d[r]] <= cap_) && ok;
        }
        return ok;
    }

    void pop(std::size_t k) {
        const auto& d = diag_[k];
        for (std::size_t r = 0; r <= k; ++r) --counts_[d[r]];
    }

    Modulus m_;
    std::size_t s_;
    bool symmetry_, collect_;
    std::vector<std::vector<std::uint32_t>> diag_;
    std::vector<std::uint64_t> counts_;
    std::vector<std::uint32_t> row_;
    std::uint64_t cap_;
    std::vector<std::uint64_t> pow_;
    std::vector<std::pair<std::uint32_t, std::uint64_t>> leaders_;  // (divisor g < m, phi(m/g))
    std::uint64_t lo_ = 0, hi_ = 0;
    ShardReport report_;
    std::vector<std::vector<std::uint32_t>> rows_;
};

std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> read_checkpoint(const std::string& path) {
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> done;
    std::ifstream in(path);
    if (!in) return done;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::uint64_t start, end, count;
        std::string status;
        if (ls >> start >> end >> status >> count && status == "done") done[{start, end}] = count;
    }
    return done;
}

}  // namespace

SearchResult search_balanced(Modulus m, std::int64_t s, const SearchOptions& options) {
    if (s < 1) throw OutOfDomain("size must be >= 1");
    SearchResult out{m, s, true, {}, 0, 0, {}, {}};
    const auto cells = static_cast<std::uint64_t>(s) * static_cast<std::uint64_t>(s + 1) / 2;
    if (cells % m.value() != 0) {
        out.admissible = false;
        out.reason = "m = " + std::to_string(m.value()) + " does not divide C(s+1,2) = " + std::to_string(cells);
        return out;
    }
    std::uint64_t space = 1;
    for (std::int64_t k = 0; k < s; ++k) {
        if (space > (std::uint64_t{1} << 63) / m.value()) throw Overflow("m^s does not fit in 63 bits");
        space *= m.value();
    }
    std::uint64_t lo = 0, hi = space;
    if (options.range) {
        lo = std::min(options.range->first, space);
        hi = std::min(options.range->second, space);
    }
    if (options.shards <= 1 && !options.range && space > options.limit) {
        throw BudgetExceeded("m^s = " + std::to_string(space) + " rows exceed the search limit " +
                             std::to_string(options.limit) + "; pass shards or a range");
    }
    if (options.checkpoint && !options.count_only) {
        throw std::invalid_argument("checkpointing stores counts only; combine it with count_only");
    }

    const std::uint64_t shards = std::max<std::uint64_t>(1, std::min<std::uint64_t>(options.shards, hi - lo + 1));
    const auto width = hi - lo;
    std::vector<ShardReport> reports(shards);
    for (std::uint64_t i = 0; i < shards; ++i) {
        reports[i].start = lo + static_cast<std::uint64_t>(static_cast<u128>(width) * i / shards);
        reports[i].end = lo + static_cast<std::uint64_t>(static_cast<u128>(width) * (i + 1) / shards);
    }

    std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> done;
    std::ofstream log;
    std::mutex log_mutex;
    if (options.checkpoint) {
        done = read_checkpoint(*options.checkpoint);
        log.open(*options.checkpoint, std::ios::app);
        if (!log) throw IoError("cannot open checkpoint file " + *options.checkpoint);
    }

    std::vector<std::vector<std::vector<std::uint32_t>>> found(shards);
    parallel_for(
        shards,
        [&](std::size_t i) {
            auto& r = reports[i];
            if (auto it = done.find({r.start, r.end}); it != done.end()) {
                r.resumed = true;
                r.count = it->second;
                return;
            }
            ShardSearch search(m, s, options.symmetry, !options.count_only);
            r = search.run(r.start, r.end);
            found[i] = search.take_rows();
            if (log.is_open()) {
                std::lock_guard lock(log_mutex);
                log << r.start << ' ' << r.end << " done " << r.count << '\n' << std::flush;
            }
        },
        options.threads);

    for (std::uint64_t i = 0; i < shards; ++i) {
        out.count += reports[i].count;
        out.visited += reports[i].visited;
        for (auto& row : found[i]) out.rows.push_back(std::move(row));
    }
    out.shards = std::move(reports);
    return out;
}

Verdict verify_chap1(Residue a, Residue d, std::size_t count) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v{TheoremId::Chap1};
    const auto m = a.modulus();
    if (m.value() == 1) {
        v.notes.push_back("m = 1: every triangle is balanced");
        return v;
    }
    if (m.value() % 2 == 0) throw PreconditionViolated("m must be odd");
    if (!is_invertible(d)) throw PreconditionViolated("d is not invertible");
    const auto two_m = Residue(2, m).pow(static_cast<std::int64_t>(m.value()));
    const auto period = ord(two_m) * m.value();
    v.notes.push_back("period ord_m(2^m) m = " + std::to_string(period));
    const std::int64_t offsets[] = {0, 1};
    for (auto s : congruent_sizes(period, offsets, count)) {
        std::vector<std::int64_t> row;
        for (std::int64_t i = 0; i < s; ++i) row.push_back((a + Residue(i, m) * d).value());
        const auto M = steinhaus(row, m).multiset();
        const auto r = is_balanced(M);
        ++v.instances;
        if (!r) {
            std::ostringstream w;
            w << "count(" << r.witness->first << ")=" << M.count(r.witness->first) << " count("
              << r.witness->second << ")=" << M.count(r.witness->second);
            v.failures.push_back({"AP(" + std::to_string(a.value()) + "," + std::to_string(d.value()) + "," +
                                      std::to_string(s) + ")",
                                  w.str()});
        }
    }
    v.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return v;
}

Verdict verify_chap2(Modulus m, std::int64_t size_bound) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v{TheoremId::Chap2};
    if (m.value() == 1) {
        v.notes.push_back("m = 1: every triangle is balanced");
        return v;
    }
    if (m.value() % 2 == 0) throw PreconditionViolated("m must be odd");
    const auto mv = static_cast<std::int64_t>(m.value());

    struct Goal {
        std::int64_t s;
        std::vector<int> eps;
        bool required;
    };
    std::vector<Goal> goals;
    for (std::int64_t s = 1; s <= size_bound; ++s) {
        const bool zero = s % mv == 0, minus_one = (s + 1) % (3 * mv) == 0;
        if (minus_one) {
            goals.push_back({s, {-1, 1}, true});
            goals.push_back({s, {1, -1}, true});
        } else if (zero) {
            goals.push_back({s, {-1, 1}, true});
            goals.push_back({s, {1, -1}, false});
        }
    }
    if (goals.empty()) {
        v.inconclusive = true;
        v.notes.push_back("no size up to the bound is 0 mod m or -1 mod 3m");
        return v;
    }

    // The interlaced seed has period 3m in space; apexes are scanned over one
    // space period and 6m time steps past the earliest admissible apex time.
    const std::int64_t space_period = 3 * mv, time_span = 6 * mv;
    const std::int64_t smax = size_bound;
    const auto w = pascal_weights(1, m);
    TabulatedOrbit orbit(w, Seed::interlace(m), {-smax - 1}, {space_period + smax + 1}, time_span + 2 * smax);

    std::vector<std::optional<std::string>> hits(goals.size());
    parallel_for(goals.size(), [&](std::size_t g) {
        const auto& goal = goals[g];
        const std::int64_t t0 = goal.eps[1] < 0 ? goal.s - 1 : 0;
        for (std::int64_t t = t0; t < t0 + time_span && !hits[g]; ++t) {
            for (std::int64_t i = 0; i < space_period && !hits[g]; ++i) {
                SimplexSpec spec{{i, t}, goal.eps, goal.s};
                if (is_balanced(extract(orbit, spec))) {
                    hits[g] = "apex (" + std::to_string(i) + "," + std::to_string(t) + ")";
                }
            }
        }
    });
    for (std::size_t g = 0; g < goals.size(); ++g) {
        const auto& goal = goals[g];
        const std::string what = "s=" + std::to_string(goal.s) + " eps=" + orientation_string(goal.eps);
        if (goal.required) ++v.instances;
        if (hits[g]) {
            v.notes.push_back(what + ": balanced at " + *hits[g]);
        } else if (goal.required) {
            v.failures.push_back({what, "no balanced triangle in the scanned window"});
        } else {
            v.notes.push_back(what + ": none found in the scanned window (not required)");
        }
    }
    std::sort(v.failures.begin(), v.failures.end());
    v.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return v;
}

}  // namespace aca
