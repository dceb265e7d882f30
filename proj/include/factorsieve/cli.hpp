#pragma once

// Argument parsing and validation for the factorsieve tool, separated from
// main() so tests can exercise it directly.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "factorsieve/sieve.hpp"
#include "factorsieve/util.hpp"

namespace factorsieve {

struct cli_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class output_mode { factors, counts, csv };

inline output_mode parse_output_mode(const std::string& s) {
    if (s == "factors") return output_mode::factors;
    if (s == "counts") return output_mode::counts;
    if (s == "csv") return output_mode::csv;
    throw cli_error("unknown output mode: " + s + " (expected factors|counts|csv)");
}

struct run_args {
    uint64_t start = 0;
    uint64_t end = 0;
    uint64_t delta = 0;  // 0: default_delta(end)
    variant var = variant::both;
    std::optional<std::pair<uint64_t, uint64_t>> ap;
    output_mode output = output_mode::counts;
    std::optional<std::string> out_path;
    std::optional<std::string> save_table;
    std::optional<std::string> load_table;
    unsigned threads = 1;
    bool verbose = false;
};

struct bench_args {
    uint64_t lo = 0;
    uint64_t hi = 0;
    std::vector<uint64_t> deltas;
    std::vector<variant> variants;
    unsigned reps = 1;
    std::optional<std::string> csv_path;
};

struct parsed_cli {
    enum class mode { run, bench, help } m = mode::run;
    run_args run;
    bench_args bench;
};

inline const char* usage_text() {
    return
        "usage: factorsieve --start N --end N [options]\n"
        "       factorsieve bench --interval LO,HI [options]\n"
        "\n"
        "Factors every integer in [start, end) with a segmented sieve.\n"
        "Numbers accept underscores (10_000), 1e9 and 2^21 shorthand.\n"
        "\n"
        "run options:\n"
        "  --start N           first integer (>= 2)\n"
        "  --end N             one past the last integer\n"
        "  --delta N           segment size (default: auto)\n"
        "  --variant V         plain|pack|gap|both (default both)\n"
        "  --ap A,M            only emit n congruent to A mod M\n"
        "  --output MODE       factors|counts|csv (default counts)\n"
        "  --out PATH          write output to PATH instead of stdout\n"
        "  --save-table PATH   dump the prime table after building it\n"
        "  --load-table PATH   load a previously dumped prime table\n"
        "  --threads N         worker threads (default 1)\n"
        "  --verbose           extra reporting\n"
        "\n"
        "bench options:\n"
        "  --interval LO,HI    range to factor (required)\n"
        "  --deltas LIST       comma-separated segment sizes\n"
        "  --variants LIST     comma-separated variants (default all four)\n"
        "  --reps N            repetitions per cell, median reported (default 1)\n"
        "  --csv PATH          also write the grid as CSV\n";
}

namespace detail {

inline uint64_t parse_num(const std::string& flag, const std::string& value) {
    try {
        return parse_u64(value);
    } catch (const std::exception& e) {
        throw cli_error(flag + ": " + e.what());
    }
}

inline std::pair<uint64_t, uint64_t> parse_num_pair(const std::string& flag, const std::string& value) {
    auto comma = value.find(',');
    if (comma == std::string::npos)
        throw cli_error(flag + ": expected two comma-separated numbers, got " + value);
    return {parse_num(flag, value.substr(0, comma)), parse_num(flag, value.substr(comma + 1))};
}

inline std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    size_t pos = 0;
    while (pos <= value.size()) {
        auto comma = value.find(',', pos);
        if (comma == std::string::npos) comma = value.size();
        if (comma > pos) out.push_back(value.substr(pos, comma - pos));
        pos = comma + 1;
    }
    return out;
}

class arg_stream {
public:
    explicit arg_stream(const std::vector<std::string>& args) : args_(args) {}
    bool done() const { return i_ >= args_.size(); }
    const std::string& peek() const { return args_[i_]; }
    const std::string& take() { return args_[i_++]; }
    std::string value_for(const std::string& flag) {
        if (done()) throw cli_error(flag + " requires a value");
        return take();
    }

private:
    const std::vector<std::string>& args_;
    size_t i_ = 0;
};

} // namespace detail

// args excludes the program name.  Throws cli_error on any usage problem.
inline parsed_cli parse_cli(const std::vector<std::string>& args) {
    parsed_cli out;
    detail::arg_stream in(args);

    if (!in.done() && in.peek() == "bench") {
        in.take();
        out.m = parsed_cli::mode::bench;
        bench_args& b = out.bench;
        bool have_interval = false;
        bool have_variants = false;
        b.deltas = {uint64_t{1} << 21, uint64_t{1} << 23, uint64_t{1} << 25, uint64_t{1} << 27};
        while (!in.done()) {
            std::string flag = in.take();
            if (flag == "--interval") {
                std::tie(b.lo, b.hi) = detail::parse_num_pair(flag, in.value_for(flag));
                have_interval = true;
            } else if (flag == "--deltas") {
                b.deltas.clear();
                for (auto& d : detail::split_list(in.value_for(flag)))
                    b.deltas.push_back(detail::parse_num(flag, d));
            } else if (flag == "--variants") {
                have_variants = true;
                b.variants.clear();
                for (auto& v : detail::split_list(in.value_for(flag))) {
                    try {
                        b.variants.push_back(parse_variant(v));
                    } catch (const std::exception& e) {
                        throw cli_error(std::string("--variants: ") + e.what());
                    }
                }
            } else if (flag == "--reps") {
                b.reps = static_cast<unsigned>(detail::parse_num(flag, in.value_for(flag)));
            } else if (flag == "--csv") {
                b.csv_path = in.value_for(flag);
            } else if (flag == "--help" || flag == "-h") {
                out.m = parsed_cli::mode::help;
                return out;
            } else {
                throw cli_error("unknown flag: " + flag);
            }
        }
        if (!have_interval) throw cli_error("bench requires --interval LO,HI");
        if (!have_variants)
            b.variants = {variant::plain, variant::pack, variant::gap, variant::both};
        if (b.lo < 2 || b.lo >= b.hi) throw cli_error("--interval: need 2 <= LO < HI");
        if (b.reps < 1) throw cli_error("--reps must be >= 1");
        for (uint64_t d : b.deltas)
            if (d < 1) throw cli_error("--deltas entries must be >= 1");
        return out;
    }

    run_args& r = out.run;
    bool have_start = false, have_end = false;
    while (!in.done()) {
        std::string flag = in.take();
        if (flag == "--start") {
            r.start = detail::parse_num(flag, in.value_for(flag));
            have_start = true;
        } else if (flag == "--end") {
            r.end = detail::parse_num(flag, in.value_for(flag));
            have_end = true;
        } else if (flag == "--delta") {
            r.delta = detail::parse_num(flag, in.value_for(flag));
            if (r.delta < 1) throw cli_error("--delta must be >= 1");
        } else if (flag == "--variant") {
            try {
                r.var = parse_variant(in.value_for(flag));
            } catch (const std::exception& e) {
                throw cli_error(std::string("--variant: ") + e.what());
            }
        } else if (flag == "--ap") {
            r.ap = detail::parse_num_pair(flag, in.value_for(flag));
        } else if (flag == "--output") {
            r.output = parse_output_mode(in.value_for(flag));
        } else if (flag == "--out") {
            r.out_path = in.value_for(flag);
        } else if (flag == "--save-table") {
            r.save_table = in.value_for(flag);
        } else if (flag == "--load-table") {
            r.load_table = in.value_for(flag);
        } else if (flag == "--threads") {
            r.threads = static_cast<unsigned>(detail::parse_num(flag, in.value_for(flag)));
            if (r.threads < 1) throw cli_error("--threads must be >= 1");
        } else if (flag == "--verbose") {
            r.verbose = true;
        } else if (flag == "--help" || flag == "-h") {
            out.m = parsed_cli::mode::help;
            return out;
        } else {
            throw cli_error("unknown flag: " + flag);
        }
    }
    if (!have_start || !have_end) throw cli_error("--start and --end are required");
    if (r.start < 2) throw cli_error("--start must be >= 2");
    if (r.start >= r.end) throw cli_error("--start must be below --end");
    if (r.ap) {
        auto [a, m] = *r.ap;
        if (m < 1) throw cli_error("--ap: modulus must be >= 1");
        if (a >= m) throw cli_error("--ap: residue must be below the modulus");
    }
    return out;
}

} // namespace factorsieve
