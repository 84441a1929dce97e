#include "aca/automaton.hpp"

#include <charconv>
#include <sstream>

#include "parse_util.hpp"

namespace aca {

namespace {

std::size_t checked_pow(std::size_t base, unsigned e) {
    std::size_t out = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (out > SIZE_MAX / base) throw Overflow("stencil size overflows");
        out *= base;
    }
    return out;
}

}  // namespace

WeightScheme::WeightScheme(unsigned q, unsigned r, std::vector<std::int64_t> weights, Modulus m)
    : q_(q), r_(r), weights_(std::move(weights)), mod_(m) {
    if (q_ == 0) throw std::invalid_argument("automaton dimension must be >= 1");
    const auto expected = checked_pow(2 * std::size_t{r_} + 1, q_);
    if (weights_.size() != expected) {
        throw std::invalid_argument("stencil needs (2r+1)^q = " + std::to_string(expected) +
                                    " weights, got " + std::to_string(weights_.size()));
    }
    std::int64_t sigma = 0;
    std::vector<std::int64_t> sigmas(q_, 0);
    for (std::size_t flat = 0; flat < weights_.size(); ++flat) {
        const auto w = mod_.reduce(weights_[flat]);
        sigma = (sigma + w) % mod_.value();
        auto off = offset_of(flat);
        for (unsigned k = 0; k < q_; ++k) {
            sigmas[k] = (sigmas[k] + static_cast<std::int64_t>(mod_.mul(mod_.reduce(off[k]), w))) %
                        mod_.value();
        }
    }
    sigma_ = static_cast<std::uint32_t>(sigma);
    sigmas_.reserve(q_);
    for (auto s : sigmas) sigmas_.push_back(static_cast<std::uint32_t>(s));
}

std::vector<std::int64_t> WeightScheme::offset_of(std::size_t flat) const {
    const std::int64_t side = 2 * static_cast<std::int64_t>(r_) + 1;
    std::vector<std::int64_t> off(q_);
    for (unsigned k = q_; k-- > 0;) {
        off[k] = static_cast<std::int64_t>(flat % side) - r_;
        flat /= side;
    }
    return off;
}

std::int64_t WeightScheme::weight(std::span<const std::int64_t> offset) const {
    if (offset.size() != q_) throw std::invalid_argument("offset dimension mismatch");
    const std::int64_t r = r_;
    std::size_t flat = 0;
    for (auto o : offset) {
        if (o < -r || o > r) throw IndexOutOfRange("stencil offset outside [-r, r]");
        flat = flat * (2 * r_ + 1) + static_cast<std::size_t>(o + r);
    }
    return weights_[flat];
}

std::string WeightScheme::to_string() const {
    std::ostringstream os;
    os << "q=" << q_ << ";r=" << r_ << ";w=";
    for (std::size_t i = 0; i < weights_.size(); ++i) os << (i ? "," : "") << weights_[i];
    return os.str();
}

SigmaCoefficients sigma_coeffs(const WeightScheme& w) {
    SigmaCoefficients out{w.sigma(), {}};
    for (unsigned k = 1; k <= w.dim(); ++k) out.sigmas.push_back(w.sigma_k(k));
    return out;
}

WeightScheme pascal_weights(unsigned q, Modulus m) {
    if (q == 0) throw std::invalid_argument("Pascal automaton needs q >= 1");
    const auto n = checked_pow(3, q);
    std::vector<std::int64_t> w(n, 0);
    // Flat index of an offset in {-1,0,1}^q with last axis fastest.
    auto flat_of = [q](const std::vector<std::int64_t>& off) {
        std::size_t f = 0;
        for (unsigned k = 0; k < q; ++k) f = f * 3 + static_cast<std::size_t>(off[k] + 1);
        return f;
    };
    std::vector<std::int64_t> off(q, 0);
    w[flat_of(off)] = 1;
    for (unsigned k = 0; k < q; ++k) {
        off.assign(q, 0);
        off[k] = -1;
        w[flat_of(off)] = 1;
    }
    return WeightScheme(q, 1, std::move(w), m);
}

WeightScheme parse_stencil(std::string_view text, Modulus m) {
    text = detail::trim(text);
    if (text.starts_with("pascal:")) {
        return pascal_weights(static_cast<unsigned>(detail::parse_int(text.substr(7), "pascal dimension")),
                              m);
    }
    if (text.find('=') == std::string_view::npos) {
        auto w = detail::parse_int_list(text, "weights");
        if (w.size() % 2 == 0) throw ParseError("bare weight list must have odd length 2r+1");
        const auto r = static_cast<unsigned>(w.size() / 2);
        return WeightScheme(1, r, std::move(w), m);
    }
    std::int64_t q = -1, r = -1;
    std::vector<std::int64_t> w;
    bool have_w = false;
    for (auto field : detail::split(text, ';')) {
        field = detail::trim(field);
        if (field.empty()) continue;
        auto eq = field.find('=');
        if (eq == std::string_view::npos) throw ParseError("expected key=value in stencil: " + std::string(field));
        auto key = detail::trim(field.substr(0, eq));
        auto val = field.substr(eq + 1);
        if (key == "q") {
            q = detail::parse_int(val, "q");
        } else if (key == "r") {
            r = detail::parse_int(val, "r");
        } else if (key == "w") {
            w = detail::parse_int_list(val, "w");
            have_w = true;
        } else {
            throw ParseError("unknown stencil key: " + std::string(key));
        }
    }
    if (!have_w) throw ParseError("stencil is missing w=");
    if (q < 0) q = 1;
    if (r < 0) {
        // Infer r from the weight count for q = 1.
        if (q != 1 || w.size() % 2 == 0) throw ParseError("stencil is missing r=");
        r = static_cast<std::int64_t>(w.size() / 2);
    }
    if (q < 1 || r < 0) throw ParseError("stencil needs q >= 1 and r >= 0");
    try {
        return WeightScheme(static_cast<unsigned>(q), static_cast<unsigned>(r), std::move(w), m);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

Window::Window(std::vector<std::int64_t> origin, std::vector<std::int64_t> extents, Modulus m)
    : origin_(std::move(origin)), extents_(std::move(extents)), mod_(m) {
    if (origin_.size() != extents_.size() || origin_.empty()) {
        throw std::invalid_argument("window origin/extents dimension mismatch");
    }
    std::size_t n = 1;
    for (auto e : extents_) {
        if (e <= 0) throw std::invalid_argument("window extents must be positive");
        n *= static_cast<std::size_t>(e);
    }
    values_.assign(n, 0);
}

Window::Window(std::vector<std::int64_t> origin, std::vector<std::int64_t> extents,
               std::vector<std::uint32_t> values, Modulus m)
    : Window(std::move(origin), std::move(extents), m) {
    if (values.size() != values_.size()) throw std::invalid_argument("window value count mismatch");
    for (auto& v : values) v = mod_.reduce_unsigned(v);
    values_ = std::move(values);
}

bool Window::contains(std::span<const std::int64_t> index) const noexcept {
    if (index.size() != origin_.size()) return false;
    for (std::size_t k = 0; k < index.size(); ++k) {
        if (index[k] < origin_[k] || index[k] >= origin_[k] + extents_[k]) return false;
    }
    return true;
}

std::size_t Window::flat(std::span<const std::int64_t> index) const noexcept {
    std::size_t f = 0;
    for (std::size_t k = 0; k < index.size(); ++k) {
        f = f * static_cast<std::size_t>(extents_[k]) + static_cast<std::size_t>(index[k] - origin_[k]);
    }
    return f;
}

std::uint32_t Window::at(std::span<const std::int64_t> index) const {
    if (!contains(index)) throw OutOfDomain("index outside window");
    return values_[flat(index)];
}

void Window::set(std::span<const std::int64_t> index, std::uint32_t v) {
    if (!contains(index)) throw OutOfDomain("index outside window");
    values_[flat(index)] = mod_.reduce_unsigned(v);
}

Window step(const WeightScheme& w, const Window& win) {
    if (win.dim() != w.dim()) throw std::invalid_argument("window and stencil dimensions differ");
    if (!(win.modulus() == w.modulus())) throw std::invalid_argument("window and stencil moduli differ");
    const unsigned q = w.dim();
    const std::int64_t r = w.radius();
    std::vector<std::int64_t> origin(q), extents(q);
    for (unsigned k = 0; k < q; ++k) {
        if (win.extents()[k] <= 2 * r) {
            throw WindowTooSmall("window extent " + std::to_string(win.extents()[k]) +
                                 " along axis " + std::to_string(k + 1) + " must exceed 2r = " +
                                 std::to_string(2 * r));
        }
        origin[k] = win.origin()[k] + r;
        extents[k] = win.extents()[k] - 2 * r;
    }
    Window out(origin, extents, win.modulus());
    const Modulus mod = w.modulus();

    // Precompute the nonzero stencil taps as flat offsets into the input window.
    struct Tap {
        std::ptrdiff_t delta;
        std::uint32_t weight;
    };
    std::vector<std::ptrdiff_t> stride(q, 1);
    for (unsigned k = q - 1; k-- > 0;) stride[k] = stride[k + 1] * win.extents()[k + 1];
    std::vector<Tap> taps;
    for (std::size_t f = 0; f < w.weights().size(); ++f) {
        auto wt = mod.reduce(w.weights()[f]);
        if (wt == 0) continue;
        auto off = w.offset_of(f);
        std::ptrdiff_t delta = 0;
        for (unsigned k = 0; k < q; ++k) delta += off[k] * stride[k];
        taps.push_back({delta, wt});
    }

    auto in = win.values();
    auto dst = out.values();
    std::vector<std::int64_t> idx(q, 0);  // position inside `out`, relative
    for (std::size_t o = 0; o < dst.size(); ++o) {
        std::ptrdiff_t center = 0;
        for (unsigned k = 0; k < q; ++k) center += (idx[k] + r) * stride[k];
        std::uint64_t acc = 0;
        for (const auto& t : taps) {
            acc += std::uint64_t{t.weight} * in[static_cast<std::size_t>(center + t.delta)];
            if (acc >= (1ull << 63)) acc %= mod.value();
        }
        dst[o] = static_cast<std::uint32_t>(acc % mod.value());
        for (unsigned k = q; k-- > 0;) {
            if (++idx[k] < extents[k]) break;
            idx[k] = 0;
        }
    }
    return out;
}

}  // namespace aca
