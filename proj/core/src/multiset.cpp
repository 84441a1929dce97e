#include "aca/multiset.hpp"

#include <string>

namespace aca {

ResidueMultiset::ResidueMultiset(Modulus m) : mod_(m) {
    if (m.value() <= dense_limit) dense_.assign(m.value(), 0);
}

ResidueMultiset::ResidueMultiset(Modulus m, const std::vector<std::uint64_t>& table) : ResidueMultiset(m) {
    if (table.size() != m.value()) throw std::invalid_argument("count table length must equal m");
    for (std::uint32_t x = 0; x < m.value(); ++x) {
        if (table[x] != 0) add(x, table[x]);
    }
}

void ResidueMultiset::add(std::uint32_t x, std::uint64_t times) {
    x = mod_.reduce_unsigned(x);
    if (!dense_.empty()) {
        dense_[x] += times;
    } else if (times != 0) {
        sparse_[x] += times;
    }
    total_ += times;
}

std::uint64_t ResidueMultiset::count(std::uint32_t x) const {
    x = mod_.reduce_unsigned(x);
    if (!dense_.empty()) return dense_[x];
    auto it = sparse_.find(x);
    return it == sparse_.end() ? 0 : it->second;
}

std::vector<std::uint64_t> ResidueMultiset::table() const {
    if (!dense_.empty()) return dense_;
    std::vector<std::uint64_t> out(mod_.value(), 0);
    for (const auto& [x, c] : sparse_) out[x] = c;
    return out;
}

std::vector<std::pair<std::uint32_t, std::uint64_t>> ResidueMultiset::support() const {
    std::vector<std::pair<std::uint32_t, std::uint64_t>> out;
    if (!dense_.empty()) {
        for (std::uint32_t x = 0; x < dense_.size(); ++x) {
            if (dense_[x] != 0) out.emplace_back(x, dense_[x]);
        }
    } else {
        out.assign(sparse_.begin(), sparse_.end());
    }
    return out;
}

ResidueMultiset& ResidueMultiset::merge(const ResidueMultiset& other) {
    if (!(other.mod_ == mod_)) throw std::invalid_argument("cannot merge multisets over different moduli");
    for (const auto& [x, c] : other.support()) add(x, c);
    return *this;
}

bool operator==(const ResidueMultiset& a, const ResidueMultiset& b) {
    return a.mod_ == b.mod_ && a.total_ == b.total_ && a.support() == b.support();
}

BalanceReport is_balanced(const ResidueMultiset& M) {
    const auto m = M.modulus().value();
    BalanceReport r;
    if (m == 1) return r;
    if (M.total() % m != 0) r.balanced = false;

    std::uint32_t argmin = 0, argmax = 0;
    std::uint64_t lo = M.count(0), hi = lo;
    if (M.is_dense()) {
        auto t = M.table();
        for (std::uint32_t x = 1; x < m; ++x) {
            if (t[x] < lo) lo = t[x], argmin = x;
            if (t[x] > hi) hi = t[x], argmax = x;
        }
    } else {
        // Absent residues count 0; the smallest absent one is the first gap.
        auto sup = M.support();
        std::uint32_t expect = 0;
        bool gap = false;
        for (const auto& [x, c] : sup) {
            if (!gap && x != expect) {
                gap = true;
            } else if (!gap) {
                ++expect;
            }
            if (c > hi) hi = c, argmax = x;
        }
        if (sup.size() < m) {
            lo = 0;
            argmin = expect;
        } else {
            for (const auto& [x, c] : sup) {
                if (c < lo) lo = c, argmin = x;
            }
        }
    }
    if (lo != hi) {
        r.balanced = false;
        r.witness = std::make_pair(argmin, argmax);
    }
    return r;
}

ResidueMultiset project(const ResidueMultiset& M, std::uint64_t alpha) {
    const auto m = M.modulus().value();
    if (alpha == 0 || m % alpha != 0) {
        throw NotADivisor(std::to_string(alpha) + " does not divide " + std::to_string(m));
    }
    ResidueMultiset out{Modulus(alpha)};
    for (const auto& [x, c] : M.support()) out.add(static_cast<std::uint32_t>(x % alpha), c);
    return out;
}

bool has_period(const ResidueMultiset& M, std::uint64_t step) {
    const auto m = M.modulus().value();
    step %= m;
    if (step == 0) return true;
    if (M.is_dense()) {
        auto t = M.table();
        for (std::uint64_t x = 0; x < m; ++x) {
            if (t[x] != t[(x + step) % m]) return false;
        }
        return true;
    }
    for (const auto& [x, c] : M.support()) {
        if (M.count(static_cast<std::uint32_t>((x + step) % m)) != c) return false;
        if (M.count(static_cast<std::uint32_t>((x + m - step) % m)) != c) return false;
    }
    return true;
}

bool check_projection_theorem(const ResidueMultiset& M, std::uint64_t alpha) {
    auto projected = project(M, alpha);
    const bool rhs = is_balanced(projected).balanced && has_period(M, alpha);
    return is_balanced(M).balanced == rhs;
}

}  // namespace aca
