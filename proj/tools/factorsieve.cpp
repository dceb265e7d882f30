#include <fstream>
#include <iostream>
#include <memory>
#include <vector>

#include "factorsieve/bench.hpp"
#include "factorsieve/cli.hpp"
#include "factorsieve/output.hpp"

namespace fs = factorsieve;

namespace {

fs::gap_table obtain_table(const fs::run_args& a) {
    if (a.load_table) {
        fs::gap_table t = fs::load_table(*a.load_table);
        if (a.verbose)
            std::cerr << "loaded table: limit=" << t.limit << " count=" << t.count << '\n';
        return t;
    }
    uint64_t limit = std::max<uint64_t>(2, fs::isqrt(a.end - 1));
    fs::gap_table t = fs::build_prime_table(limit);
    if (a.verbose)
        std::cerr << "built table: limit=" << t.limit << " count=" << t.count << '\n';
    if (a.save_table) fs::save_table(t, *a.save_table);
    return t;
}

int run_main(const fs::run_args& a) {
    fs::gap_table table = obtain_table(a);

    std::ofstream file;
    if (a.out_path) {
        file.open(*a.out_path);
        if (!file) {
            std::cerr << "error: cannot open " << *a.out_path << " for writing\n";
            return 2;
        }
    }
    std::ostream& os = a.out_path ? static_cast<std::ostream&>(file) : std::cout;

    fs::sieve_config cfg;
    cfg.lo = a.start;
    cfg.hi = a.end;
    cfg.delta = a.delta;
    cfg.var = a.var;
    cfg.ap = a.ap;
    cfg.threads = a.threads;

    fs::factor_sink sink;
    if (a.output == fs::output_mode::factors)
        sink = [&](const fs::factorization& f) { os << fs::format_factors_line(f) << '\n'; };
    else if (a.output == fs::output_mode::csv)
        sink = [&](const fs::factorization& f) { fs::write_csv_rows(os, f); };

    fs::run_summary sum = fs::run(cfg, table, sink);

    if (a.output == fs::output_mode::counts) {
        fs::write_counts(os, sum);
        fs::write_space_report(os, sum);
    } else if (a.verbose) {
        fs::write_counts(std::cerr, sum);
        fs::write_space_report(std::cerr, sum);
    }
    os.flush();
    if (a.out_path && !file) {
        std::cerr << "error: write to " << *a.out_path << " failed\n";
        return 2;
    }
    return 0;
}

int bench_main(const fs::bench_args& b) {
    if (b.variants.empty()) return 0;  // empty grid
    uint64_t limit = std::max<uint64_t>(2, fs::isqrt(b.hi - 1));
    fs::gap_table table = fs::build_prime_table(limit);
    auto grid = fs::run_grid(b.lo, b.hi, b.deltas, b.variants, b.reps, table, &std::cerr);
    fs::render_grid(std::cout, grid, b.deltas, b.variants, b.lo, b.hi);
    if (b.csv_path) {
        std::ofstream csv(*b.csv_path);
        if (!csv) {
            std::cerr << "error: cannot open " << *b.csv_path << " for writing\n";
            return 2;
        }
        fs::write_grid_csv(csv, grid);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    fs::parsed_cli parsed;
    try {
        parsed = fs::parse_cli(args);
    } catch (const fs::cli_error& e) {
        std::cerr << "error: " << e.what() << "\n\n" << fs::usage_text();
        return 1;
    }
    try {
        switch (parsed.m) {
            case fs::parsed_cli::mode::help:
                std::cout << fs::usage_text();
                return 0;
            case fs::parsed_cli::mode::run:
                return run_main(parsed.run);
            case fs::parsed_cli::mode::bench:
                return bench_main(parsed.bench);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
