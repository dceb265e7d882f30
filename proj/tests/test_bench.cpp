#include "doctest.h"

#include <sstream>

#include "factorsieve/bench.hpp"
#include "oracle.hpp"

using namespace factorsieve;

TEST_CASE("space_report footprints") {
    gap_table table = build_prime_table(100000000);  // for hi = 10^16
    uint64_t delta = uint64_t{1} << 21;

    auto pack = space_report(variant::pack, delta, table);
    CHECK(pack.slot_bytes == delta * 24);

    auto plain = space_report(variant::plain, delta, table);
    CHECK(plain.slot_bytes == delta * 68);
    CHECK(plain.slot_bytes > 2 * pack.slot_bytes);

    // gap cells: one byte per stored prime vs 8 bytes per explicit prime
    auto gap = space_report(variant::gap, delta, table);
    CHECK(table.count == 5761455);
    CHECK(gap.table_bytes <= table.count);
    CHECK(plain.table_bytes == 8 * table.count);
    CHECK(gap.table_bytes < plain.table_bytes / 7);
}

TEST_CASE("grid counts agree across cells") {
    gap_table table = build_prime_table(1000);
    std::vector<uint64_t> deltas = {1 << 10, 1 << 12};
    std::vector<variant> variants = {variant::plain, variant::both};
    auto grid = run_grid(2, 200000, deltas, variants, 1, table);
    REQUIRE(grid.size() == 4);
    for (const auto& c : grid) {
        CHECK(!c.skipped);
        CHECK(c.primes_found == grid[0].primes_found);
        CHECK(c.prime_divisors == grid[0].prime_divisors);
    }
    // total space grows with delta at fixed variant
    CHECK(grid[2].slot_bytes + grid[2].table_bytes > grid[0].slot_bytes + grid[0].table_bytes);
    CHECK(grid[3].slot_bytes + grid[3].table_bytes > grid[1].slot_bytes + grid[1].table_bytes);
    // packed slots under half the plain ones at every delta
    CHECK(2 * grid[1].slot_bytes < grid[0].slot_bytes);
    CHECK(2 * grid[3].slot_bytes < grid[2].slot_bytes);

    std::ostringstream os;
    render_grid(os, grid, deltas, variants, 2, 200000);
    CHECK(os.str().find("plain") != std::string::npos);
    std::ostringstream csv;
    write_grid_csv(csv, grid);
    CHECK(csv.str().find("variant,delta") == 0);
}

TEST_CASE("peak space depends on delta, not range length") {
    gap_table table = build_prime_table(1000);
    auto space_for = [&](uint64_t hi) {
        sieve_config cfg;
        cfg.lo = 2;
        cfg.hi = hi;
        cfg.delta = 1 << 12;
        run_summary s = run(cfg, table);
        return std::pair{s.slot_bytes, s.table_bytes};
    };
    CHECK(space_for(100000) == space_for(1000000));
}

TEST_CASE("empty variant list gives an empty grid") {
    gap_table table = build_prime_table(100);
    auto grid = run_grid(2, 1000, {256}, {}, 1, table);
    CHECK(grid.empty());
}
