#pragma once

// Primes up to a limit, stored as half-gaps between consecutive odd primes.
// One byte per stored prime; 2 and 3 are implicit.  A zero cell redirects the
// decoder to a side table of oversized gaps.

#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "factorsieve/util.hpp"

namespace factorsieve {

struct gap_table {
    uint64_t limit = 0;  // primes <= limit are stored
    uint64_t count = 0;  // number of primes <= limit, including 2 and 3
    std::vector<uint8_t> half_gaps;                       // cell i: (p_{i+2}-p_{i+1})/2, starting from p=3
    std::vector<std::pair<uint64_t, uint64_t>> exceptions; // (cell index, full gap) for half-gaps > 255

    // 8 bits per cell plus 128 bits per exception entry.
    uint64_t size_bits() const {
        return 8 * half_gaps.size() + 128 * exceptions.size();
    }
};

// Streams 2, 3, then successive primes by accumulating decoded gaps.
// Holds cursor state only; the table is shared read-only.
class prime_cursor {
public:
    explicit prime_cursor(const gap_table& t) : table_(&t) {}

    bool has_next() const {
        if (emitted_ < 2) return table_->limit >= (emitted_ == 0 ? 2u : 3u);
        return cell_ < table_->half_gaps.size();
    }

    uint64_t next() {
        if (emitted_ == 0) {
            ++emitted_;
            cur_ = 2;
            return 2;
        }
        if (emitted_ == 1) {
            ++emitted_;
            cur_ = 3;
            return 3;
        }
        uint8_t hg = table_->half_gaps[cell_];
        uint64_t gap;
        if (hg == 0) {
            const auto& ex = table_->exceptions;
            while (ex_ < ex.size() && ex[ex_].first < cell_) ++ex_;
            if (ex_ >= ex.size() || ex[ex_].first != cell_)
                throw std::runtime_error("gap table corrupt: sentinel cell " +
                                         std::to_string(cell_) + " has no exception entry");
            gap = ex[ex_].second;
        } else {
            gap = 2 * static_cast<uint64_t>(hg);
        }
        ++cell_;
        ++emitted_;
        cur_ += gap;
        return cur_;
    }

private:
    const gap_table* table_;
    uint64_t cur_ = 0;
    uint64_t emitted_ = 0;  // primes yielded so far
    size_t cell_ = 0;
    size_t ex_ = 0;
};

// Simple bitset sieve; transient scaffolding for building the gap stream.
inline std::vector<bool> sieve_bitset(uint64_t limit) {
    std::vector<bool> is_prime(limit + 1, true);
    is_prime[0] = false;
    if (limit >= 1) is_prime[1] = false;
    for (uint64_t i = 2; i * i <= limit; ++i)
        if (is_prime[i])
            for (uint64_t j = i * i; j <= limit; j += i)
                is_prime[j] = false;
    return is_prime;
}

inline gap_table build_prime_table(uint64_t limit) {
    if (limit < 2) throw std::domain_error("prime table limit must be >= 2");
    gap_table t;
    t.limit = limit;
    auto is_prime = sieve_bitset(limit);
    uint64_t prev = 0;
    for (uint64_t n = 2; n <= limit; ++n) {
        if (!is_prime[n]) continue;
        ++t.count;
        if (n > 3) {
            uint64_t gap = n - prev;
            uint64_t half = gap / 2;
            if (half <= 255) {
                t.half_gaps.push_back(static_cast<uint8_t>(half));
            } else {
                t.exceptions.emplace_back(t.half_gaps.size(), gap);
                t.half_gaps.push_back(0);
            }
        }
        prev = n;
    }
    return t;
}

inline std::vector<uint64_t> decode_primes(const gap_table& t) {
    std::vector<uint64_t> primes;
    primes.reserve(t.count);
    prime_cursor it(t);
    while (it.has_next()) primes.push_back(it.next());
    return primes;
}

// Binary dump: magic "GPT1", LE u64 limit, u64 count, raw half-gap bytes,
// u32 exception count, then (u64 cell index, u64 full gap) pairs.
namespace detail {
inline void put_u64(std::string& out, uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
inline void put_u32(std::string& out, uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
inline uint64_t get_u64(const std::string& in, size_t& pos) {
    if (pos + 8 > in.size()) throw std::runtime_error("gap table dump truncated");
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(static_cast<uint8_t>(in[pos++])) << (8 * i);
    return v;
}
inline uint32_t get_u32(const std::string& in, size_t& pos) {
    if (pos + 4 > in.size()) throw std::runtime_error("gap table dump truncated");
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(static_cast<uint8_t>(in[pos++])) << (8 * i);
    return v;
}
} // namespace detail

inline std::string serialize_table(const gap_table& t) {
    std::string out = "GPT1";
    detail::put_u64(out, t.limit);
    detail::put_u64(out, t.count);
    out.append(reinterpret_cast<const char*>(t.half_gaps.data()), t.half_gaps.size());
    detail::put_u32(out, static_cast<uint32_t>(t.exceptions.size()));
    for (auto& [idx, gap] : t.exceptions) {
        detail::put_u64(out, idx);
        detail::put_u64(out, gap);
    }
    return out;
}

inline gap_table deserialize_table(const std::string& in) {
    if (in.size() < 20 || in.compare(0, 4, "GPT1") != 0)
        throw std::runtime_error("not a gap table dump (bad magic)");
    size_t pos = 4;
    gap_table t;
    t.limit = detail::get_u64(in, pos);
    t.count = detail::get_u64(in, pos);
    size_t ncells = t.count >= 2 ? t.count - 2 : 0;
    if (pos + ncells > in.size()) throw std::runtime_error("gap table dump truncated");
    t.half_gaps.assign(in.begin() + pos, in.begin() + pos + ncells);
    pos += ncells;
    uint32_t nex = detail::get_u32(in, pos);
    t.exceptions.reserve(nex);
    for (uint32_t i = 0; i < nex; ++i) {
        uint64_t idx = detail::get_u64(in, pos);
        uint64_t gap = detail::get_u64(in, pos);
        t.exceptions.emplace_back(idx, gap);
    }
    return t;
}

inline void save_table(const gap_table& t, const std::string& path) {
    std::string data = serialize_table(t);
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    size_t written = std::fwrite(data.data(), 1, data.size(), f);
    std::fclose(f);
    if (written != data.size()) throw std::runtime_error("short write to " + path);
}

inline gap_table load_table(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw std::runtime_error("cannot open " + path);
    std::string data;
    char buf[1 << 16];
    size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) data.append(buf, n);
    std::fclose(f);
    return deserialize_table(data);
}

} // namespace factorsieve
