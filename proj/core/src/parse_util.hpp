#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "aca/error.hpp"

namespace aca::detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' || s.front() == '\n'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n'))
        s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

inline std::int64_t parse_int(std::string_view s, const char* what) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
        throw ParseError(std::string("invalid integer for ") + what + ": '" + std::string(s) + "'");
    }
    return v;
}

inline std::vector<std::int64_t> parse_int_list(std::string_view s, const char* what) {
    std::vector<std::int64_t> out;
    s = trim(s);
    if (s.empty()) throw ParseError(std::string("empty list for ") + what);
    for (auto part : split(s, ',')) out.push_back(parse_int(part, what));
    return out;
}

}  // namespace aca::detail
