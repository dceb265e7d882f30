#include "doctest.h"

#include "factorsieve/cli.hpp"
#include "factorsieve/output.hpp"

using namespace factorsieve;

TEST_CASE("parse_u64 forms") {
    CHECK(parse_u64("12345") == 12345);
    CHECK(parse_u64("10_000") == 10000);
    CHECK(parse_u64("1e9") == 1000000000);
    CHECK(parse_u64("25e2") == 2500);
    CHECK(parse_u64("2^21") == 2097152);
    CHECK(parse_u64("9999999000000000") == 9999999000000000ull);
    CHECK_THROWS_AS(parse_u64(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_u64("12x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_u64("99999999999999999999999"), std::overflow_error);
}

TEST_CASE("basic run invocation") {
    auto p = parse_cli({"--start", "2", "--end", "100", "--output", "counts"});
    REQUIRE(p.m == parsed_cli::mode::run);
    CHECK(p.run.start == 2);
    CHECK(p.run.end == 100);
    CHECK(p.run.output == output_mode::counts);
    CHECK(p.run.var == variant::both);
    CHECK(p.run.threads == 1);
    CHECK(!p.run.ap);
}

TEST_CASE("start >= end is a usage error") {
    CHECK_THROWS_AS(parse_cli({"--start", "1e2", "--end", "10"}), cli_error);
}

TEST_CASE("headline configuration") {
    auto p = parse_cli({"--start", "9999999000000000", "--end", "1e16", "--delta", "2097152",
                        "--variant", "both"});
    CHECK(p.run.start == 9999999000000000ull);
    CHECK(p.run.end == 10000000000000000ull);
    CHECK(p.run.delta == 2097152);
    CHECK(p.run.var == variant::both);
}

TEST_CASE("usage errors") {
    CHECK_THROWS_AS(parse_cli({"--start", "2"}), cli_error);
    CHECK_THROWS_AS(parse_cli({"--start", "2", "--end", "10", "--bogus"}), cli_error);
    CHECK_THROWS_AS(parse_cli({"--start", "abc", "--end", "10"}), cli_error);
    CHECK_THROWS_AS(parse_cli({"--start", "1", "--end", "10"}), cli_error);
    CHECK_THROWS_AS(parse_cli({"--start", "2", "--end", "10", "--ap", "5"}), cli_error);
    CHECK_THROWS_AS(parse_cli({"--start", "2", "--end", "10", "--ap", "4,4"}), cli_error);
    CHECK_THROWS_AS(parse_cli({"--start", "2", "--end", "10", "--variant", "turbo"}), cli_error);
    CHECK_THROWS_AS(parse_cli({"--start", "2", "--end", "10", "--threads"}), cli_error);
}

TEST_CASE("run flags") {
    auto p = parse_cli({"--start", "2", "--end", "1e6", "--ap", "3,7", "--output", "csv",
                        "--out", "x.csv", "--threads", "4", "--save-table", "t.bin", "--verbose"});
    REQUIRE(p.run.ap);
    CHECK(p.run.ap->first == 3);
    CHECK(p.run.ap->second == 7);
    CHECK(p.run.output == output_mode::csv);
    CHECK(p.run.out_path == "x.csv");
    CHECK(p.run.threads == 4);
    CHECK(p.run.save_table == "t.bin");
    CHECK(p.run.verbose);
}

TEST_CASE("bench subcommand") {
    auto p = parse_cli({"bench", "--interval", "2,1e8", "--deltas", "2^14,2^17",
                        "--variants", "plain,both", "--reps", "3", "--csv", "grid.csv"});
    REQUIRE(p.m == parsed_cli::mode::bench);
    CHECK(p.bench.lo == 2);
    CHECK(p.bench.hi == 100000000);
    CHECK(p.bench.deltas == std::vector<uint64_t>{1 << 14, 1 << 17});
    CHECK(p.bench.variants == std::vector<variant>{variant::plain, variant::both});
    CHECK(p.bench.reps == 3);
    CHECK(p.bench.csv_path == "grid.csv");

    CHECK_THROWS_AS(parse_cli({"bench"}), cli_error);
    CHECK_THROWS_AS(parse_cli({"bench", "--interval", "10,2"}), cli_error);

    auto defaults = parse_cli({"bench", "--interval", "2,100"});
    CHECK(defaults.bench.variants.size() == 4);
    CHECK(defaults.bench.deltas.size() == 4);

    auto empty = parse_cli({"bench", "--interval", "2,100", "--variants", ""});
    CHECK(empty.bench.variants.empty());
}

TEST_CASE("factorization line format") {
    factorization f;
    f.n = 12;
    f.factors = {{2, 2}, {3, 1}};
    CHECK(format_factors_line(f) == "12: 2^2 3");
    f.n = 19;
    f.factors = {{19, 1}};
    CHECK(format_factors_line(f) == "19: 19");
}
