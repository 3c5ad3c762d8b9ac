// modsum: modular-addition checksum toolbox.
//
// Subcommands: sum, verify, encode, sweep, screen, rollover, pud.
// Exit codes: 0 success/valid, 1 verification failure, 2 usage/input error.

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "modsum/checksum.hpp"
#include "modsum/errors.hpp"
#include "modsum/fault.hpp"
#include "modsum/hd_analysis.hpp"
#include "modsum/pud.hpp"
#include "modsum/spec.hpp"

namespace {

using modsum::AlgorithmSpec;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AlgoOptions {
    std::string preset;
    std::string family;
    std::uint64_t modulus = 0;
    unsigned check_bits = 0;
    unsigned block_bytes = 1;
    std::uint64_t seed = 0;
};

void add_algo_options(CLI::App* cmd, AlgoOptions& opts) {
    cmd->add_option("--preset", opts.preset, "algorithm preset name");
    cmd->add_option("--family", opts.family,
                    "singlesum | dualsum | koopman | koopmanparity");
    cmd->add_option("--modulus", opts.modulus, "modulus M");
    cmd->add_option("--k", opts.check_bits, "check value width in bits");
    cmd->add_option("--block", opts.block_bytes, "bytes per kernel iteration");
    cmd->add_option("--seed", opts.seed, "initial seed");
}

AlgorithmSpec resolve_spec(const AlgoOptions& opts) {
    if (!opts.preset.empty()) {
        auto spec = modsum::preset_spec(opts.preset);
        if (!spec) throw UsageError("unknown preset: " + opts.preset);
        return *spec;
    }
    if (opts.family.empty() || opts.modulus == 0 || opts.check_bits == 0)
        throw UsageError("need --preset or --family/--modulus/--k");
    auto family = modsum::family_from_name(opts.family);
    if (!family) throw UsageError("unknown family: " + opts.family);
    return AlgorithmSpec::make(*family, opts.modulus, opts.check_bits,
                               opts.block_bytes, opts.seed);
}

// "A", "A:B" or "A:B:step".
std::vector<std::uint64_t> parse_range(const std::string& text) {
    std::uint64_t lo = 0, hi = 0, step = 1;
    char extra = 0;
    int n = std::sscanf(text.c_str(), "%" SCNu64 ":%" SCNu64 ":%" SCNu64 "%c",
                        &lo, &hi, &step, &extra);
    if (n == 1) {
        hi = lo;
    } else if (n != 2 && n != 3) {
        throw UsageError("bad range: " + text);
    }
    if (step == 0 || hi < lo) throw UsageError("bad range: " + text);
    std::vector<std::uint64_t> values;
    for (std::uint64_t v = lo; v <= hi; v += step) values.push_back(v);
    return values;
}

std::vector<std::uint8_t> read_input(const std::string& path) {
    if (path.empty() || path == "-") {
        return {std::istreambuf_iterator<char>(std::cin),
                std::istreambuf_iterator<char>()};
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_output(const std::string& path, const std::string& contents) {
    if (path.empty() || path == "-") {
        std::cout << contents;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot open " + path);
    out << contents;
}

void write_output(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    write_output(path, std::string(bytes.begin(), bytes.end()));
}

std::string hex_check(std::uint64_t value, unsigned check_bits) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%0*" PRIx64, 2 * ((check_bits + 7) / 8), value);
    return buf;
}

int run(int argc, char** argv) {
    CLI::App app{"modular-addition checksum toolbox"};
    app.require_subcommand(1);

    AlgoOptions algo;
    std::string input_path = "-";
    std::string out_path;
    std::string lengths_text, m_text = "1:3", range_text;
    std::uint64_t trials = 1'000'000;
    std::uint64_t rng_seed = 1;
    std::uint64_t budget = 1'000'000'000;
    std::uint64_t max_len = std::uint64_t{1} << 40;
    double ber = 1e-6;
    unsigned screen_k = 0, hd = 3, m_max = 8, ideal_hd = 0;
    bool force_exhaustive = false;
    bool zero_data = false;

    auto* sum_cmd = app.add_subcommand("sum", "print the check value of the input bytes");
    add_algo_options(sum_cmd, algo);
    sum_cmd->add_option("input", input_path, "input file ('-' for stdin)");

    auto* verify_cmd = app.add_subcommand("verify", "check a code word file");
    add_algo_options(verify_cmd, algo);
    verify_cmd->add_option("input", input_path, "code word file")->required();

    auto* encode_cmd = app.add_subcommand("encode", "append the check value to the input");
    add_algo_options(encode_cmd, algo);
    encode_cmd->add_option("input", input_path, "input file ('-' for stdin)");
    encode_cmd->add_option("--out", out_path, "output path (default stdout)");

    auto* sweep_cmd = app.add_subcommand(
        "sweep", "undetected-fraction table over a length/m grid (CSV)");
    add_algo_options(sweep_cmd, algo);
    sweep_cmd->add_option("--lengths", lengths_text, "data word lengths A:B[:step]")
        ->required();
    sweep_cmd->add_option("--m", m_text, "fault weights A:B");
    sweep_cmd->add_option("--trials", trials, "sampling trials per cell");
    sweep_cmd->add_option("--rng-seed", rng_seed, "base RNG seed");
    sweep_cmd->add_flag("--exhaustive", force_exhaustive, "force exhaustive counting");
    sweep_cmd->add_option("--budget", budget, "exhaustive pattern budget");
    sweep_cmd->add_flag("--zero-data", zero_data, "all-zero data words instead of random");
    sweep_cmd->add_option("--out", out_path, "output CSV path (default stdout)");

    auto* screen_cmd = app.add_subcommand("screen", "rank moduli by HD-holding length (CSV)");
    screen_cmd->add_option("--k", screen_k, "check value width in bits")->required();
    screen_cmd->add_option("--range", range_text, "modulus range A:B");
    screen_cmd->add_option("--hd", hd, "HD target (3 or 4)");
    screen_cmd->add_option("--max-len", max_len, "scan bound in bytes");
    screen_cmd->add_option("--out", out_path, "output CSV path (default stdout)");

    auto* rollover_cmd = app.add_subcommand("rollover", "HD-holding length report (CSV)");
    add_algo_options(rollover_cmd, algo);
    rollover_cmd->add_option("--max-len", max_len, "scan bound in bytes");
    rollover_cmd->add_option("--out", out_path, "output CSV path (default stdout)");

    auto* pud_cmd = app.add_subcommand(
        "pud", "probability-of-undetected-fault curve (CSV)");
    add_algo_options(pud_cmd, algo);
    pud_cmd->add_option("--lengths", lengths_text, "data word lengths A:B[:step]");
    pud_cmd->add_option("--ber", ber, "bit error ratio");
    pud_cmd->add_option("--m", m_text, "measured fault weights A:B");
    pud_cmd->add_option("--m-max", m_max, "largest measured weight before the 2^-k tail");
    pud_cmd->add_option("--trials", trials, "sampling trials per cell");
    pud_cmd->add_option("--rng-seed", rng_seed, "base RNG seed");
    pud_cmd->add_option("--budget", budget, "exhaustive pattern budget");
    pud_cmd->add_option("--ideal-hd", ideal_hd,
                        "emit the idealized curve for this HD instead (needs --k)");
    pud_cmd->add_option("--out", out_path, "output CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (*sum_cmd) {
        auto spec = resolve_spec(algo);
        auto bytes = read_input(input_path);
        if (bytes.empty()) throw UsageError("empty input");
        std::cout << hex_check(modsum::checksum(bytes, spec), spec.check_bits) << '\n';
        return 0;
    }

    if (*verify_cmd) {
        auto spec = resolve_spec(algo);
        auto bytes = read_input(input_path);
        if (bytes.size() < spec.check_bytes() + 1u)
            throw modsum::BadCheckLength("code word shorter than check field plus one data byte");
        modsum::CodeWord cw;
        cw.data.assign(bytes.begin(), bytes.end() - spec.check_bytes());
        cw.check.assign(bytes.end() - spec.check_bytes(), bytes.end());
        return modsum::verify_codeword(cw, spec) ? 0 : 1;
    }

    if (*encode_cmd) {
        auto spec = resolve_spec(algo);
        auto bytes = read_input(input_path);
        if (bytes.empty()) throw UsageError("empty input");
        auto cw = modsum::encode_codeword(bytes, spec);
        std::vector<std::uint8_t> out = cw.data;
        out.insert(out.end(), cw.check.begin(), cw.check.end());
        write_output(out_path, out);
        return 0;
    }

    if (*sweep_cmd) {
        auto spec = resolve_spec(algo);
        auto lengths = parse_range(lengths_text);
        auto m_values = parse_range(m_text);
        std::vector<unsigned> ms(m_values.begin(), m_values.end());
        modsum::SweepConfig cfg;
        cfg.trial.trials = trials;
        cfg.trial.rng_seed = rng_seed;
        cfg.trial.data_model =
            zero_data ? modsum::DataModel::AllZero : modsum::DataModel::RandomBytes;
        cfg.force_exhaustive = force_exhaustive;
        cfg.pattern_budget = budget;
        auto table = modsum::sweep(spec, lengths, ms, cfg);
        std::ostringstream os;
        table.write_csv(os);
        write_output(out_path, os.str());
        return 0;
    }

    if (*screen_cmd) {
        std::uint64_t lo, hi;
        if (!range_text.empty()) {
            auto range = parse_range(range_text);
            lo = range.front();
            hi = range.back();
        } else {
            // Default: full range for small k, the top candidates for k=32
            // where scanning every modulus is impractical.
            hi = (std::uint64_t{1} << (hd == 4 ? screen_k - 1 : screen_k)) - 1;
            lo = screen_k <= 16 ? (hi + 1) / 2 : hi - 1023;
        }
        auto result = modsum::screen_moduli(screen_k, lo, hi, hd, max_len);
        std::ostringstream os;
        result.write_csv(os);
        write_output(out_path, os.str());
        return 0;
    }

    if (*rollover_cmd) {
        auto spec = resolve_spec(algo);
        modsum::RolloverReport report;
        switch (spec.family) {
            case modsum::Family::Koopman:
                report = modsum::koopman_rollover(spec.modulus, spec.check_bits, max_len);
                break;
            case modsum::Family::KoopmanParity:
                report = modsum::koopman_parity_rollover(spec.modulus, spec.check_bits,
                                                         max_len);
                break;
            case modsum::Family::DualSum: {
                report.modulus = spec.modulus;
                report.check_bits = spec.check_bits;
                report.family = spec.family;
                report.hd = 3;
                report.scanned_up_to = max_len;
                modsum::CancelFinding f;
                f.first_fail_bytes =
                    modsum::dual_sum_rollover(spec.modulus, spec.block_bytes);
                report.finding = f;
                break;
            }
            case modsum::Family::SingleSum:
                throw UsageError("rollover analysis applies to koopman, koopmanparity and dualsum");
        }
        std::ostringstream os;
        modsum::write_rollover_csv(os, report);
        write_output(out_path, os.str());
        return 0;
    }

    if (*pud_cmd) {
        auto lengths = parse_range(lengths_text.empty() ? "64:4096:64" : lengths_text);
        std::ostringstream os;
        if (ideal_hd > 0) {
            if (algo.check_bits == 0) throw UsageError("--ideal-hd needs --k");
            modsum::ideal_curve(ideal_hd, algo.check_bits, lengths, ber).write_csv(os);
        } else {
            auto spec = resolve_spec(algo);
            auto m_values = parse_range(m_text);
            std::vector<unsigned> ms(m_values.begin(), m_values.end());
            modsum::SweepConfig cfg;
            cfg.trial.trials = trials;
            cfg.trial.rng_seed = rng_seed;
            cfg.pattern_budget = budget;
            auto table = modsum::sweep(spec, lengths, ms, cfg);
            modsum::curve_sweep(table.algorithm, table, lengths, ber,
                                spec.check_bits, m_max)
                .write_csv(os);
        }
        write_output(out_path, os.str());
        return 0;
    }

    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const modsum::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
