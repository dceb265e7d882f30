#pragma once

// Segmented sieve driver.  Partitions [lo, hi) into delta-sized windows,
// records small-prime divisors per integer, then finishes each factorization
// by exponent recovery and the surviving-cofactor rule.

#include <algorithm>
#include <bit>
#include <cassert>
#include <cctype>
#include <chrono>
#include <cstdint>
#include <type_traits>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "factorsieve/packed_divisors.hpp"
#include "factorsieve/prime_store.hpp"
#include "factorsieve/util.hpp"

namespace factorsieve {

enum class variant { plain, pack, gap, both };

constexpr bool uses_packed_slots(variant v) { return v == variant::pack || v == variant::both; }
constexpr bool uses_gap_table(variant v) { return v == variant::gap || v == variant::both; }

inline const char* variant_name(variant v) {
    switch (v) {
        case variant::plain: return "plain";
        case variant::pack: return "pack";
        case variant::gap: return "gap";
        case variant::both: return "both";
    }
    return "?";
}

inline variant parse_variant(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (s == "plain") return variant::plain;
    if (s == "pack") return variant::pack;
    if (s == "gap") return variant::gap;
    if (s == "both") return variant::both;
    throw std::invalid_argument("unknown variant: " + s + " (expected plain|pack|gap|both)");
}

// Uncompressed divisor slot: 16 32-bit entries plus a length word.
struct plain_list {
    static constexpr int max_primes = 16;

    uint32_t entries[max_primes];
    uint32_t len = 0;

    void clear() { len = 0; }
    int length() const { return static_cast<int>(len); }

    void add_prime(uint64_t p) {
        if (len >= max_primes) throw std::length_error("plain divisor list full (16 primes)");
        entries[len++] = static_cast<uint32_t>(p);
    }

    uint64_t get_prime(int pos) const {
        if (pos < 0 || pos >= static_cast<int>(len))
            throw std::out_of_range("plain divisor list position out of range");
        return entries[pos];
    }
};

static_assert(sizeof(plain_list) == 68, "16 32-bit entries plus length");

constexpr uint64_t slot_footprint_bytes(variant v) {
    return uses_packed_slots(v) ? sizeof(packed_factor_list) : sizeof(plain_list);
}

struct factorization {
    uint64_t n = 0;
    std::vector<std::pair<uint64_t, uint32_t>> factors;  // (prime, exponent), increasing
};

struct sieve_config {
    uint64_t lo = 2;
    uint64_t hi = 0;
    uint64_t delta = 0;  // 0: use default_delta(hi)
    variant var = variant::both;
    std::optional<std::pair<uint64_t, uint64_t>> ap;  // keep only n == a (mod m)
    unsigned threads = 1;
};

struct run_summary {
    uint64_t primes_found = 0;
    uint64_t prime_divisors = 0;           // sum of exponents over emitted n
    uint64_t distinct_prime_divisors = 0;  // distinct primes over emitted n
    uint64_t crossings = 0;
    uint64_t segments = 0;
    uint64_t delta = 0;
    uint64_t slot_bytes = 0;   // divisor slot arrays, analytic
    uint64_t table_bytes = 0;  // prime table, analytic
    double wall_seconds = 0;
};

using factor_sink = std::function<void(const factorization&)>;

// Segment size balancing per-segment prime iteration against space:
// sqrt(hi) / (ln(hi) * ln(ln(hi))), floored at 1024.
inline uint64_t default_delta(uint64_t hi) {
    if (hi < 16) hi = 16;
    double lg = std::log(static_cast<double>(hi));
    double d = std::sqrt(static_cast<double>(hi)) / (lg * std::log(lg));
    auto v = static_cast<uint64_t>(std::llround(d));
    return std::max<uint64_t>(1024, v);
}

namespace detail {

// Crossing loop: for each table prime p < x2 record p in the slot of every
// multiple.  Packed slots never store 2; its multiples are still tallied so
// the crossing count is variant-independent.
template <class Slot, class ForEachPrime>
uint64_t cross_window(uint64_t x1, uint64_t x2, Slot* slots, bool skip_two,
                      ForEachPrime&& for_each_prime) {
    uint64_t crossings = 0;
    for_each_prime([&](uint64_t p) -> bool {
        if (p >= x2) return false;  // primes are increasing; no multiples remain
        if (skip_two && p == 2) {
            crossings += count_multiples(2, x1, x2);
            return true;
        }
        uint64_t r = x1 % p;
        uint64_t q = r ? x1 + (p - r) : x1;
        for (; q < x2; q += p) {
            slots[q - x1].add_prime(p);
            ++crossings;
        }
        return true;
    });
    return crossings;
}

// Emits (prime, exponent) pairs for n in increasing prime order.  The slot
// holds n's distinct small primes; 2 comes from trailing zeros when the slot
// type excludes it.  Whatever survives division is 1 or a single prime.
template <class Slot, class Emit>
void complete_slot(uint64_t n, const Slot& slot, bool two_from_parity, Emit&& emit) {
    uint64_t rest = n;
    if (two_from_parity && (rest & 1) == 0) {
        auto e = static_cast<uint32_t>(std::countr_zero(rest));
        rest >>= e;
        emit(uint64_t{2}, e);
    }
    int len = slot.length();
    for (int i = 0; i < len; ++i) {
        uint64_t p = slot.get_prime(i);
        uint32_t e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        assert(e > 0 && "slot lists a prime that does not divide n");
        if (e > 0) emit(p, e);
    }
    if (rest > 1) emit(rest, uint32_t{1});
}

} // namespace detail

// One fully crossed window, for inspection and tests; run() below drives the
// same loops without materializing a segment per window.
struct segment {
    uint64_t x1 = 0;
    uint64_t x2 = 0;
    variant var = variant::plain;
    uint64_t crossings = 0;
    std::vector<packed_factor_list> packed;
    std::vector<plain_list> plain;

    // Distinct stored primes of x1 + i (2 omitted for packed variants).
    std::vector<uint64_t> stored_divisors(uint64_t i) const {
        std::vector<uint64_t> out;
        auto take = [&](const auto& slot) {
            for (int k = 0; k < slot.length(); ++k) out.push_back(slot.get_prime(k));
        };
        if (uses_packed_slots(var)) take(packed.at(i));
        else take(plain.at(i));
        return out;
    }
};

inline segment sieve_segment(uint64_t x1, uint64_t x2, const gap_table& table, variant v) {
    if (x1 < 2 || x1 >= x2) throw std::domain_error("segment bounds must satisfy 2 <= x1 < x2");
    if (table.limit < isqrt(x2 - 1))
        throw std::domain_error("prime table limit below sqrt of segment upper bound");
    segment seg;
    seg.x1 = x1;
    seg.x2 = x2;
    seg.var = v;
    uint64_t width = x2 - x1;
    auto iterate = [&](auto f) {
        if (uses_gap_table(v)) {
            prime_cursor it(table);
            while (it.has_next())
                if (!f(it.next())) break;
        } else {
            for (uint64_t p : decode_primes(table))
                if (!f(p)) break;
        }
    };
    if (uses_packed_slots(v)) {
        seg.packed.resize(width);
        seg.crossings = detail::cross_window(x1, x2, seg.packed.data(), true, iterate);
    } else {
        seg.plain.resize(width);
        seg.crossings = detail::cross_window(x1, x2, seg.plain.data(), false, iterate);
    }
    return seg;
}

// Exact crossing total for [x1, x2): sum over table primes p < x2 of the
// number of multiples of p in the window.
inline uint64_t count_crossings_expected(uint64_t x1, uint64_t x2, const gap_table& table) {
    uint64_t total = 0;
    prime_cursor it(table);
    while (it.has_next()) {
        uint64_t p = it.next();
        if (p >= x2) break;
        total += count_multiples(p, x1, x2);
    }
    return total;
}

inline factorization complete_factorization(uint64_t n, const std::vector<uint64_t>& distinct_small_primes,
                                            uint64_t table_limit) {
    if (n == 0) throw std::domain_error("cannot factor 0");
    (void)table_limit;
    factorization f;
    f.n = n;
    uint64_t rest = n;
    for (uint64_t p : distinct_small_primes) {
        uint32_t e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        if (e == 0)
            throw std::logic_error("divisor list corrupt: " + std::to_string(p) +
                                   " does not divide " + std::to_string(n));
        f.factors.emplace_back(p, e);
    }
    if (rest > 1) f.factors.emplace_back(rest, 1);
    return f;
}

namespace detail {

struct local_counts {
    uint64_t primes_found = 0;
    uint64_t prime_divisors = 0;
    uint64_t distinct_prime_divisors = 0;
    uint64_t crossings = 0;
};

template <class Slot>
struct seg_worker {
    std::vector<Slot> slots;
    factorization scratch;
    std::vector<factorization> buffer;  // used only when emissions are deferred
    local_counts counts;

    // UseGaps: iterate the compressed stream; otherwise use the decoded list.
    template <bool UseGaps>
    void process(uint64_t x1, uint64_t x2, const sieve_config& cfg, const gap_table& table,
                 const std::vector<uint64_t>& primes, const factor_sink* direct_sink,
                 bool buffer_output) {
        uint64_t width = x2 - x1;
        if (slots.size() < width) slots.resize(width);
        for (uint64_t i = 0; i < width; ++i) slots[i].clear();

        constexpr bool packed = std::is_same_v<Slot, packed_factor_list>;
        auto iterate = [&](auto f) {
            if constexpr (UseGaps) {
                prime_cursor it(table);
                while (it.has_next())
                    if (!f(it.next())) break;
            } else {
                for (uint64_t p : primes)
                    if (!f(p)) break;
            }
        };
        counts.crossings += cross_window(x1, x2, slots.data(), packed, iterate);

        bool want_factors = direct_sink != nullptr || buffer_output;
        uint64_t ap_a = 0, ap_m = 0;
        if (cfg.ap) {
            ap_a = cfg.ap->first;
            ap_m = cfg.ap->second;
        }
        for (uint64_t i = 0; i < width; ++i) {
            uint64_t n = x1 + i;
            if (ap_m && n % ap_m != ap_a) continue;
            uint32_t nfac = 0;
            uint64_t sum_e = 0;
            uint64_t first_p = 0;
            uint32_t first_e = 0;
            if (want_factors) scratch.factors.clear();
#ifndef NDEBUG
            uint64_t prod = 1;
#endif
            complete_slot(n, slots[i], packed, [&](uint64_t p, uint32_t e) {
                if (nfac == 0) {
                    first_p = p;
                    first_e = e;
                }
                ++nfac;
                sum_e += e;
                if (want_factors) scratch.factors.emplace_back(p, e);
#ifndef NDEBUG
                for (uint32_t k = 0; k < e; ++k) prod *= p;
#endif
            });
            assert(prod == n && "factorization product mismatch");
            counts.distinct_prime_divisors += nfac;
            counts.prime_divisors += sum_e;
            if (nfac == 1 && first_e == 1 && first_p == n) ++counts.primes_found;
            if (want_factors) {
                scratch.n = n;
                if (buffer_output) buffer.push_back(scratch);
                else (*direct_sink)(scratch);
            }
        }
    }
};

template <class Slot, bool UseGaps>
void run_segments(const sieve_config& cfg, uint64_t delta, const gap_table& table,
                  const std::vector<uint64_t>& primes, const factor_sink& sink,
                  run_summary& sum) {
    const factor_sink* sink_ptr = sink ? &sink : nullptr;
    uint64_t nseg = (cfg.hi - cfg.lo + delta - 1) / delta;
    sum.segments = nseg;

    auto merge = [&](local_counts& c) {
        sum.primes_found += c.primes_found;
        sum.prime_divisors += c.prime_divisors;
        sum.distinct_prime_divisors += c.distinct_prime_divisors;
        sum.crossings += c.crossings;
        c = {};
    };

    if (cfg.threads <= 1) {
        seg_worker<Slot> w;
        for (uint64_t x1 = cfg.lo; x1 < cfg.hi; x1 += delta) {
            uint64_t x2 = std::min(x1 + delta, cfg.hi);
            w.template process<UseGaps>(x1, x2, cfg, table, primes, sink_ptr, false);
        }
        merge(w.counts);
        return;
    }

    // Batches of T segments run in parallel; emissions are replayed in
    // segment order afterwards so output is identical to the serial path.
    unsigned t_count = cfg.threads;
    std::vector<seg_worker<Slot>> workers(t_count);
    for (uint64_t base = cfg.lo; base < cfg.hi; base += delta * t_count) {
        unsigned active = 0;
        std::vector<std::thread> threads;
        for (unsigned t = 0; t < t_count; ++t) {
            uint64_t x1 = base + delta * t;
            if (x1 >= cfg.hi) break;
            uint64_t x2 = std::min(x1 + delta, cfg.hi);
            ++active;
            threads.emplace_back([&, t, x1, x2] {
                workers[t].template process<UseGaps>(x1, x2, cfg, table, primes, sink_ptr,
                                                     sink_ptr != nullptr);
            });
        }
        for (auto& th : threads) th.join();
        for (unsigned t = 0; t < active; ++t) {
            if (sink_ptr)
                for (const auto& f : workers[t].buffer) sink(f);
            workers[t].buffer.clear();
            merge(workers[t].counts);
        }
    }
}

} // namespace detail

inline void validate_config(const sieve_config& cfg) {
    if (cfg.lo < 2) throw std::domain_error("range start must be >= 2");
    if (cfg.lo >= cfg.hi) throw std::domain_error("range start must be below range end");
    if (cfg.ap) {
        auto [a, m] = *cfg.ap;
        if (m < 1) throw std::domain_error("progression modulus must be >= 1");
        if (a >= m) throw std::domain_error("progression residue must be below the modulus");
    }
    if (cfg.threads < 1) throw std::domain_error("thread count must be >= 1");
}

// Factor every n in [lo, hi) in increasing order, feeding each factorization
// to the sink (when given) and tallying the summary counters.
inline run_summary run(const sieve_config& cfg, const gap_table& table, const factor_sink& sink = {}) {
    validate_config(cfg);
    if (table.limit < isqrt(cfg.hi - 1))
        throw std::domain_error("prime table limit below sqrt(hi - 1)");
    uint64_t delta = cfg.delta ? cfg.delta : default_delta(cfg.hi);

    run_summary sum;
    sum.delta = delta;
    sum.slot_bytes = delta * slot_footprint_bytes(cfg.var);
    sum.table_bytes = uses_gap_table(cfg.var) ? (table.size_bits() + 7) / 8 : 8 * table.count;

    std::vector<uint64_t> primes;
    if (!uses_gap_table(cfg.var)) primes = decode_primes(table);

    auto t0 = std::chrono::steady_clock::now();
    bool packed = uses_packed_slots(cfg.var);
    bool gaps = uses_gap_table(cfg.var);
    if (packed && gaps)
        detail::run_segments<packed_factor_list, true>(cfg, delta, table, primes, sink, sum);
    else if (packed)
        detail::run_segments<packed_factor_list, false>(cfg, delta, table, primes, sink, sum);
    else if (gaps)
        detail::run_segments<plain_list, true>(cfg, delta, table, primes, sink, sum);
    else
        detail::run_segments<plain_list, false>(cfg, delta, table, primes, sink, sum);
    sum.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return sum;
}

} // namespace factorsieve
