#pragma once

// Variant-by-delta benchmark grid with analytic space accounting.

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <new>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <unistd.h>

#include "factorsieve/sieve.hpp"

namespace factorsieve {

struct bench_result {
    variant var = variant::plain;
    uint64_t delta = 0;
    bool skipped = false;
    double wall_seconds = 0;
    uint64_t slot_bytes = 0;
    uint64_t table_bytes = 0;
    uint64_t crossings = 0;
    uint64_t primes_found = 0;
    uint64_t prime_divisors = 0;
};

// Physical memory, for deciding whether a cell's slot array can be allocated
// at all.  0 when the platform gives no answer.
inline uint64_t physical_memory_bytes() {
#if defined(_SC_PHYS_PAGES) && defined(_SC_PAGESIZE)
    long pages = sysconf(_SC_PHYS_PAGES);
    long page = sysconf(_SC_PAGESIZE);
    if (pages > 0 && page > 0) return static_cast<uint64_t>(pages) * static_cast<uint64_t>(page);
#endif
    return 0;
}

struct space_summary {
    uint64_t slot_bytes = 0;
    uint64_t table_bytes = 0;
    uint64_t total_bits = 0;
};

inline space_summary space_report(variant v, uint64_t delta, const gap_table& table) {
    space_summary s;
    s.slot_bytes = delta * slot_footprint_bytes(v);
    s.table_bytes = uses_gap_table(v) ? (table.size_bits() + 7) / 8 : 8 * table.count;
    s.total_bits = 8 * (s.slot_bytes + s.table_bytes);
    return s;
}

inline space_summary space_report(variant v, uint64_t delta, uint64_t hi) {
    return space_report(v, delta, build_prime_table(std::max<uint64_t>(2, isqrt(hi - 1))));
}

// One run() per (delta, variant, repetition); median wall time reported.
// Counts must agree across every cell.  A cell whose slot array does not fit
// in memory is marked skipped and the grid continues.
inline std::vector<bench_result> run_grid(uint64_t lo, uint64_t hi,
                                          const std::vector<uint64_t>& deltas,
                                          const std::vector<variant>& variants,
                                          unsigned repetitions, const gap_table& table,
                                          std::ostream* progress = nullptr) {
    if (repetitions < 1) throw std::domain_error("repetitions must be >= 1");
    std::vector<bench_result> grid;
    bool have_counts = false;
    uint64_t primes_ref = 0, divisors_ref = 0;
    for (uint64_t delta : deltas) {
        for (variant v : variants) {
            bench_result cell;
            cell.var = v;
            cell.delta = delta;
            uint64_t phys = physical_memory_bytes();
            if (phys && delta * slot_footprint_bytes(v) > phys - phys / 5) {
                // would overcommit and risk an OOM kill rather than bad_alloc
                cell.skipped = true;
                if (progress)
                    *progress << variant_name(v) << " delta=" << delta << " skipped (memory)\n";
                grid.push_back(cell);
                continue;
            }
            try {
                std::vector<double> times;
                run_summary sum;
                for (unsigned r = 0; r < repetitions; ++r) {
                    sieve_config cfg;
                    cfg.lo = lo;
                    cfg.hi = hi;
                    cfg.delta = delta;
                    cfg.var = v;
                    sum = run(cfg, table);
                    times.push_back(sum.wall_seconds);
                }
                std::sort(times.begin(), times.end());
                cell.wall_seconds = times[times.size() / 2];
                cell.slot_bytes = sum.slot_bytes;
                cell.table_bytes = sum.table_bytes;
                cell.crossings = sum.crossings;
                cell.primes_found = sum.primes_found;
                cell.prime_divisors = sum.prime_divisors;
                if (!have_counts) {
                    primes_ref = sum.primes_found;
                    divisors_ref = sum.prime_divisors;
                    have_counts = true;
                } else if (sum.primes_found != primes_ref || sum.prime_divisors != divisors_ref) {
                    throw std::runtime_error("count mismatch between grid cells");
                }
                if (progress)
                    *progress << variant_name(v) << " delta=" << delta << " "
                              << cell.wall_seconds << "s\n";
            } catch (const std::bad_alloc&) {
                cell.skipped = true;
                if (progress)
                    *progress << variant_name(v) << " delta=" << delta << " skipped (memory)\n";
            }
            grid.push_back(cell);
        }
    }
    return grid;
}

namespace detail {

// Wall times from the original experiment on [10^16-10^9, 10^16)
// (i5-12500T, g++ -O2); printed for comparison only.
inline double reference_seconds(variant v, uint64_t delta) {
    static constexpr uint64_t d[4] = {uint64_t{1} << 21, uint64_t{1} << 23, uint64_t{1} << 25,
                                      uint64_t{1} << 27};
    static constexpr double t[4][4] = {
        // plain, pack, gap, both
        {100.7, 91.2, 102.5, 91.9},
        {92.5, 74.6, 94.1, 75.0},
        {89.5, 66.0, 88.8, 65.8},
        {88.8, 61.5, 89.6, 62.5},
    };
    for (int i = 0; i < 4; ++i)
        if (delta == d[i]) return t[i][static_cast<int>(v)];
    return 0;
}

} // namespace detail

// Aligned text table: one row per delta, one column per variant.  When the
// interval matches the original experiment's, its published times are shown
// alongside for comparison (never asserted; hardware-specific).
inline void render_grid(std::ostream& os, const std::vector<bench_result>& grid,
                        const std::vector<uint64_t>& deltas, const std::vector<variant>& variants,
                        uint64_t lo, uint64_t hi) {
    bool reference_interval =
        lo == 10000000000000000ull - 1000000000ull && hi == 10000000000000000ull;
    os << std::left << std::setw(12) << "delta";
    for (variant v : variants) {
        os << std::right << std::setw(12) << variant_name(v);
        if (reference_interval) os << std::setw(12) << "(ref)";
    }
    os << '\n';
    size_t idx = 0;
    for (uint64_t delta : deltas) {
        os << std::left << std::setw(12) << delta;
        for (variant v : variants) {
            const bench_result& cell = grid[idx++];
            std::ostringstream val;
            if (cell.skipped) val << "skipped";
            else val << std::fixed << std::setprecision(1) << cell.wall_seconds;
            os << std::right << std::setw(12) << val.str();
            if (reference_interval) {
                double ref = detail::reference_seconds(v, delta);
                std::ostringstream r;
                if (ref > 0) r << std::fixed << std::setprecision(1) << ref;
                else r << '-';
                os << std::setw(12) << r.str();
            }
        }
        os << '\n';
    }
    if (!grid.empty() && !grid.front().skipped) {
        os << "primes: " << grid.front().primes_found
           << "  prime_divisors: " << grid.front().prime_divisors << '\n';
    }
    if (reference_interval)
        os << "(ref) = original experiment, i5-12500T; report-only\n";
}

inline void write_grid_csv(std::ostream& os, const std::vector<bench_result>& grid) {
    os << "variant,delta,skipped,wall_seconds,slot_bytes,table_bytes,crossings,primes,prime_divisors\n";
    for (const auto& c : grid) {
        os << variant_name(c.var) << ',' << c.delta << ',' << (c.skipped ? 1 : 0) << ','
           << c.wall_seconds << ',' << c.slot_bytes << ',' << c.table_bytes << ',' << c.crossings
           << ',' << c.primes_found << ',' << c.prime_divisors << '\n';
    }
}

} // namespace factorsieve
