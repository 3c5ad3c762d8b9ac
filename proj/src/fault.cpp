#include "modsum/fault.hpp"

#include <algorithm>
#include <ostream>

#include "modsum/errors.hpp"
#include "modsum/rng.hpp"

namespace modsum {

namespace {

// C(n, m) capped at `cap`; returns cap+1 on overflow past it.
std::uint64_t binomial_capped(std::uint64_t n, unsigned m, std::uint64_t cap) {
    unsigned __int128 value = 1;
    for (unsigned i = 1; i <= m; ++i) {
        value = value * (n - m + i) / i;
        if (value > cap) return cap + 1;
    }
    return static_cast<std::uint64_t>(value);
}

// Applies the pattern to a writable data buffer plus the check value read as
// an integer. Used by the trial loops; equivalent to apply_faults on the
// serialized code word.
inline std::uint64_t flip_in_place(std::span<std::uint8_t> data,
                                   std::uint64_t stored,
                                   std::span<const std::uint64_t> positions) {
    const std::uint64_t data_bits = 8 * data.size();
    for (std::uint64_t p : positions) {
        if (p < data_bits)
            data[p / 8] ^= static_cast<std::uint8_t>(1u << (p % 8));
        else
            stored ^= std::uint64_t{1} << (p - data_bits);
    }
    return stored;
}

struct ExhaustiveTally {
    std::uint64_t union_count = 0;  // patterns undetected for >= 1 word
    std::uint64_t pair_count = 0;   // (pattern, word) undetected pairs
    std::uint64_t patterns = 0;
    std::uint64_t words = 0;
};

ExhaustiveTally exhaustive_scan(const AlgorithmSpec& spec, std::uint64_t length,
                                unsigned m,
                                const std::vector<std::vector<std::uint8_t>>& words,
                                std::uint64_t pattern_budget) {
    if (length < 1) throw Error("length must be >= 1");
    if (m < 1) throw Error("fault weight must be >= 1");
    const std::uint64_t bits = codeword_bits(length, spec.check_bits);
    if (m > bits) throw Error("fault weight exceeds code word bits");

    std::uint64_t patterns = binomial_capped(bits, m, pattern_budget);
    if (patterns > pattern_budget)
        throw TooManyPatterns("pattern count C(" + std::to_string(bits) + "," +
                              std::to_string(m) + ") exceeds budget " +
                              std::to_string(pattern_budget));

    std::vector<std::vector<std::uint8_t>> buffers = words;
    std::vector<std::uint64_t> stored(words.size());
    for (std::size_t w = 0; w < words.size(); ++w)
        stored[w] = checksum(words[w], spec);

    ExhaustiveTally tally;
    tally.patterns = patterns;
    tally.words = words.size();

    const std::uint64_t data_bits = 8 * length;
    std::vector<std::uint64_t> idx(m);
    for (unsigned i = 0; i < m; ++i) idx[i] = i;
    for (;;) {
        bool any = false;
        for (std::size_t w = 0; w < words.size(); ++w) {
            auto& buffer = buffers[w];
            std::uint64_t corrupted = flip_in_place(buffer, stored[w], idx);
            if (checksum(buffer, spec) == corrupted) {
                ++tally.pair_count;
                any = true;
            }
            for (std::uint64_t p : idx)  // undo data-bit flips
                if (p < data_bits)
                    buffer[p / 8] ^= static_cast<std::uint8_t>(1u << (p % 8));
        }
        if (any) ++tally.union_count;

        // next lexicographic combination
        unsigned i = m;
        while (i > 0 && idx[i - 1] == bits - m + (i - 1)) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (unsigned j = i; j < m; ++j) idx[j] = idx[j - 1] + 1;
    }
    return tally;
}

std::vector<std::vector<std::uint8_t>> sample_words(std::uint64_t length,
                                                    DataModel model,
                                                    unsigned random_words,
                                                    std::uint64_t rng_seed,
                                                    bool include_zero) {
    std::vector<std::vector<std::uint8_t>> words;
    if (include_zero || model == DataModel::AllZero)
        words.emplace_back(length, 0);
    if (model == DataModel::RandomBytes) {
        Rng rng(rng_seed);
        for (unsigned i = 0; i < random_words; ++i) {
            std::vector<std::uint8_t> w(length);
            rng.fill(w);
            words.push_back(std::move(w));
        }
    }
    return words;
}

}  // namespace

void FaultPattern::validate(std::uint64_t data_len, unsigned check_bits) const {
    const std::uint64_t bits = codeword_bits(data_len, check_bits);
    std::uint64_t prev = bits;  // sentinel
    for (std::uint64_t p : positions) {
        if (p >= bits)
            throw BadFaultPosition("position " + std::to_string(p) +
                                   " out of range [0, " + std::to_string(bits) + ")");
        if (prev != bits && p <= prev)
            throw BadFaultPosition("positions must be ascending and distinct");
        prev = p;
    }
}

CodeWord apply_faults(const CodeWord& cw, const FaultPattern& pattern,
                      unsigned check_bits) {
    pattern.validate(cw.data.size(), check_bits);
    CodeWord out = cw;
    const std::uint64_t data_bits = 8 * cw.data.size();
    const unsigned check_bytes = static_cast<unsigned>(cw.check.size());
    for (std::uint64_t p : pattern.positions) {
        if (p < data_bits) {
            out.data[p / 8] ^= static_cast<std::uint8_t>(1u << (p % 8));
        } else {
            unsigned c = static_cast<unsigned>(p - data_bits);
            out.check[check_bytes - 1 - c / 8] ^=
                static_cast<std::uint8_t>(1u << (c % 8));
        }
    }
    return out;
}

CellCounts estimate_undetected_fraction(const AlgorithmSpec& spec,
                                        std::uint64_t length_bytes, unsigned m,
                                        const TrialConfig& cfg) {
    if (length_bytes < 1) throw Error("length must be >= 1");
    if (m < 1) throw Error("fault weight must be >= 1");
    if (cfg.trials < 1) throw Error("trials must be >= 1");
    const std::uint64_t bits = codeword_bits(length_bytes, spec.check_bits);
    if (m > bits) throw Error("fault weight exceeds code word bits");

    Rng rng(cfg.rng_seed);
    std::vector<std::uint8_t> data(length_bytes, 0);
    std::uint64_t zero_check = 0;
    if (cfg.data_model == DataModel::AllZero) zero_check = checksum(data, spec);

    CellCounts counts;
    counts.mode = CountMode::Sampled;
    counts.total = cfg.trials;
    for (std::uint64_t t = 0; t < cfg.trials; ++t) {
        std::uint64_t stored;
        if (cfg.data_model == DataModel::RandomBytes) {
            rng.fill(data);
            stored = checksum(data, spec);
        } else {
            stored = zero_check;
        }
        std::vector<std::uint64_t> positions = rng.distinct(m, bits);
        std::uint64_t corrupted = flip_in_place(data, stored, positions);
        if (checksum(data, spec) == corrupted) ++counts.undetected;
        // restore data bits for the next trial
        for (std::uint64_t p : positions)
            if (p < 8 * length_bytes)
                data[p / 8] ^= static_cast<std::uint8_t>(1u << (p % 8));
    }
    return counts;
}

std::pair<std::uint64_t, std::uint64_t> exhaustive_undetected_count(
    const AlgorithmSpec& spec, std::uint64_t length_bytes, unsigned m,
    DataModel data_model, const ExhaustiveConfig& cfg) {
    auto words = sample_words(length_bytes, data_model, cfg.random_words,
                              cfg.rng_seed, true);
    auto tally = exhaustive_scan(spec, length_bytes, m, words, cfg.pattern_budget);
    return {tally.union_count, tally.patterns};
}

const CellCounts* FractionTable::find(std::uint64_t length_bytes, unsigned m) const {
    auto it = cells.find({length_bytes, m});
    return it == cells.end() ? nullptr : &it->second;
}

void FractionTable::write_csv(std::ostream& os, bool header) const {
    if (header) os << "algorithm,length_bytes,m,mode,total,undetected,fraction\n";
    char buf[32];
    for (const auto& [key, cell] : cells) {
        std::snprintf(buf, sizeof buf, "%.12g", cell.fraction());
        os << algorithm << ',' << key.first << ',' << key.second << ','
           << (cell.mode == CountMode::Exhaustive ? "exhaustive" : "sampled")
           << ',' << cell.total << ',' << cell.undetected << ',' << buf << '\n';
    }
}

FractionTable sweep(const AlgorithmSpec& spec,
                    std::span<const std::uint64_t> lengths,
                    std::span<const unsigned> ms, const SweepConfig& cfg) {
    FractionTable table;
    table.algorithm = spec_label(spec);
    for (std::uint64_t length : lengths) {
        for (unsigned m : ms) {
            const std::uint64_t bits = codeword_bits(length, spec.check_bits);
            if (m > bits) continue;
            const std::uint64_t cell_seed = derive_seed(cfg.trial.rng_seed, length, m);
            const std::uint64_t words =
                cfg.trial.data_model == DataModel::AllZero ? 1 : cfg.random_words;
            const std::uint64_t patterns =
                binomial_capped(bits, m, cfg.pattern_budget);
            const bool within_budget = patterns <= cfg.pattern_budget;
            bool exhaustive = cfg.force_exhaustive;
            if (!exhaustive && within_budget) {
                // Exhaustive when the cell is cheap in absolute terms, or
                // whenever it is no more work than the sampling alternative.
                unsigned __int128 work =
                    static_cast<unsigned __int128>(patterns) * words * length;
                exhaustive = work <= cfg.auto_exhaustive_work ||
                             patterns * words <= cfg.trial.trials;
            }

            CellCounts cell;
            if (exhaustive) {
                if (!within_budget)
                    throw TooManyPatterns("cell (" + std::to_string(length) + "," +
                                          std::to_string(m) + ") exceeds pattern budget");
                // Average semantics for the table: count (pattern, word)
                // pairs so exhaustive and sampled cells estimate the same
                // quantity under RandomBytes.
                auto word_set = sample_words(
                    length, cfg.trial.data_model, cfg.random_words, cell_seed,
                    cfg.trial.data_model == DataModel::AllZero);
                auto tally = exhaustive_scan(spec, length, m, word_set,
                                             cfg.pattern_budget);
                cell.undetected = tally.pair_count;
                cell.total = tally.patterns * tally.words;
                cell.mode = CountMode::Exhaustive;
            } else {
                TrialConfig trial = cfg.trial;
                trial.rng_seed = cell_seed;
                cell = estimate_undetected_fraction(spec, length, m, trial);
            }
            table.cells[{length, m}] = cell;
        }
    }
    return table;
}

}  // namespace modsum
