#pragma once

// Distinct odd prime divisors of one integer, packed into a single 64-bit
// word.  Each prime is stored with its trailing 1-bit dropped; an array of
// 8-bit end positions gives constant-time random access.

#include <bit>
#include <cassert>
#include <cstdint>
#include <stdexcept>

namespace factorsieve {

struct packed_factor_list {
    static constexpr int max_primes = 15;

    uint64_t list = 0;           // concatenated pbits(p), earliest prime at bit 0
    uint8_t ptr[max_primes] = {}; // exclusive end bit position of each prime
    uint8_t plen = 0;

    void clear() {
        list = 0;
        plen = 0;
    }

    int length() const { return plen; }

    // p must be odd, >= 3, and greater than every prime already stored.
    void add_prime(uint64_t p) {
        assert(p >= 3 && (p & 1) == 1);
        if (plen >= max_primes)
            throw std::length_error("packed factor list full (15 primes)");
        unsigned left = plen > 0 ? ptr[plen - 1] : 0;
        uint64_t pbits = p >> 1;
        unsigned width = static_cast<unsigned>(std::bit_width(pbits));
        if (left + width > 64)
            throw std::overflow_error("packed factor list word overflow");
        list |= pbits << left;
        ptr[plen] = static_cast<uint8_t>(left + width);
        ++plen;
    }

    uint64_t get_prime(int pos) const {
        if (pos < 0 || pos >= plen)
            throw std::out_of_range("packed factor list position out of range");
        unsigned left = pos > 0 ? ptr[pos - 1] : 0;
        uint64_t copy = list >> left;
        unsigned width = ptr[pos] - left;
        if (width < 64) copy &= (uint64_t{1} << width) - 1;
        return (copy << 1) | 1;  // restore the trailing 1
    }
};

static_assert(sizeof(packed_factor_list) == 24, "three 64-bit words per slot");

} // namespace factorsieve
