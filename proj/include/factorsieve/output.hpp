#pragma once

// Text renderings of factorizations and run summaries.

#include <ostream>
#include <string>

#include "factorsieve/sieve.hpp"

namespace factorsieve {

// "18: 2 3^2" -- exponent-1 suffixes omitted.
inline std::string format_factors_line(const factorization& f) {
    std::string out = std::to_string(f.n) + ":";
    for (auto [p, e] : f.factors) {
        out += ' ';
        out += std::to_string(p);
        if (e > 1) {
            out += '^';
            out += std::to_string(e);
        }
    }
    return out;
}

// One "n,p,e" row per factor.
inline void write_csv_rows(std::ostream& os, const factorization& f) {
    for (auto [p, e] : f.factors)
        os << f.n << ',' << p << ',' << e << '\n';
}

inline void write_counts(std::ostream& os, const run_summary& s) {
    os << "primes: " << s.primes_found << '\n'
       << "prime_divisors: " << s.prime_divisors << '\n';
}

inline void write_space_report(std::ostream& os, const run_summary& s) {
    os << "distinct_prime_divisors: " << s.distinct_prime_divisors << '\n'
       << "slot_bytes: " << s.slot_bytes << '\n'
       << "table_bytes: " << s.table_bytes << '\n'
       << "wall_seconds: " << s.wall_seconds << '\n';
}

} // namespace factorsieve
