#pragma once

#include <cstdint>
#include <cmath>
#include <stdexcept>
#include <string>

namespace factorsieve {

inline uint64_t isqrt(uint64_t n) {
    if (n == 0) return 0;
    uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n && (r + 1) * (r + 1) > r * r) ++r;
    return r;
}

// Number of multiples of p in [lo, hi).
inline uint64_t count_multiples(uint64_t p, uint64_t lo, uint64_t hi) {
    if (lo >= hi) return 0;
    return (hi - 1) / p - (lo - 1) / p;
}

// Accepts plain digits, digit-group underscores (10_000), integer scientific
// shorthand (1e9, 25e2) and power shorthand (2^21).
inline uint64_t parse_u64(const std::string& text) {
    std::string s;
    s.reserve(text.size());
    for (char c : text)
        if (c != '_') s.push_back(c);
    if (s.empty()) throw std::invalid_argument("empty number");

    auto digits = [](const std::string& d) -> uint64_t {
        if (d.empty()) throw std::invalid_argument("malformed number");
        uint64_t v = 0;
        for (char c : d) {
            if (c < '0' || c > '9') throw std::invalid_argument("malformed number: " + d);
            uint64_t nv = v * 10 + static_cast<uint64_t>(c - '0');
            if (nv / 10 != v) throw std::overflow_error("number too large: " + d);
            v = nv;
        }
        return v;
    };

    auto caret = s.find('^');
    if (caret != std::string::npos) {
        uint64_t base = digits(s.substr(0, caret));
        uint64_t exp = digits(s.substr(caret + 1));
        uint64_t v = 1;
        for (uint64_t i = 0; i < exp; ++i) {
            if (base != 0 && v > UINT64_MAX / base)
                throw std::overflow_error("number too large: " + s);
            v *= base;
        }
        return v;
    }
    auto e = s.find_first_of("eE");
    if (e != std::string::npos) {
        uint64_t mant = digits(s.substr(0, e));
        uint64_t exp = digits(s.substr(e + 1));
        uint64_t v = mant;
        for (uint64_t i = 0; i < exp; ++i) {
            if (v > UINT64_MAX / 10) throw std::overflow_error("number too large: " + s);
            v *= 10;
        }
        return v;
    }
    return digits(s);
}

} // namespace factorsieve
