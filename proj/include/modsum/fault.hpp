#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "modsum/checksum.hpp"
#include "modsum/spec.hpp"

namespace modsum {

// A set of distinct bit positions to invert within a code word.
// Position p < 8*len(data) flips bit (p mod 8) of data byte (p div 8);
// position 8*len(data)+c flips bit c of the check value integer. Only the
// check_bits meaningful check positions exist; pad bits are not addressable.
struct FaultPattern {
    std::vector<std::uint64_t> positions;  // ascending, distinct

    // Throws BadFaultPosition on out-of-range or duplicate positions.
    void validate(std::uint64_t data_len, unsigned check_bits) const;
};

// Returns cw with exactly the listed bits inverted (an involution).
CodeWord apply_faults(const CodeWord& cw, const FaultPattern& pattern,
                      unsigned check_bits);

enum class DataModel { RandomBytes, AllZero };

struct TrialConfig {
    std::uint64_t trials = 1'000'000;
    std::uint64_t rng_seed = 1;
    DataModel data_model = DataModel::RandomBytes;
};

enum class CountMode { Exhaustive, Sampled };

struct CellCounts {
    std::uint64_t undetected = 0;
    std::uint64_t total = 0;
    CountMode mode = CountMode::Sampled;

    double fraction() const {
        return total ? static_cast<double>(undetected) / static_cast<double>(total) : 0.0;
    }
};

// Monte-Carlo estimate: per trial draw a data word, a uniform m-subset of
// code word bit positions, apply, verify; counts verify==true as undetected.
// Deterministic for a given rng_seed.
CellCounts estimate_undetected_fraction(const AlgorithmSpec& spec,
                                        std::uint64_t length_bytes, unsigned m,
                                        const TrialConfig& cfg);

struct ExhaustiveConfig {
    std::uint64_t pattern_budget = 1'000'000'000;
    unsigned random_words = 8;  // sampled words backing each pattern (plus all-zero)
    std::uint64_t rng_seed = 1;
};

// Enumerates every m-subset of code word bit positions. A pattern counts as
// undetected if it evades verification for at least one sampled data word
// (all-zero plus random_words random words under RandomBytes; all-zero only
// under AllZero). Returns (undetected patterns, total patterns). Throws
// TooManyPatterns when C(N, m) exceeds the budget.
std::pair<std::uint64_t, std::uint64_t> exhaustive_undetected_count(
    const AlgorithmSpec& spec, std::uint64_t length_bytes, unsigned m,
    DataModel data_model, const ExhaustiveConfig& cfg = {});

// Measured or exhaustive undetected-fault fractions keyed by (length, m).
struct FractionTable {
    std::string algorithm;
    std::map<std::pair<std::uint64_t, unsigned>, CellCounts> cells;

    const CellCounts* find(std::uint64_t length_bytes, unsigned m) const;
    void write_csv(std::ostream& os, bool header = true) const;
};

struct SweepConfig {
    TrialConfig trial;
    bool force_exhaustive = false;
    std::uint64_t pattern_budget = 1'000'000'000;
    // Auto mode switches to sampling once patterns * words * length exceeds
    // this; keeps exhaustive cells around or below a second of work.
    std::uint64_t auto_exhaustive_work = 100'000'000;
    unsigned random_words = 8;
};

// Fills a FractionTable over the length/m grid, exhaustively where cheap and
// by sampling otherwise; each cell records which mode was used. Per-cell RNG
// seeds derive from (rng_seed, length, m), so results are independent of
// evaluation order.
FractionTable sweep(const AlgorithmSpec& spec,
                    std::span<const std::uint64_t> lengths,
                    std::span<const unsigned> ms, const SweepConfig& cfg);

// Number of fault positions in a code word of the given data length.
inline std::uint64_t codeword_bits(std::uint64_t length_bytes, unsigned check_bits) {
    return 8 * length_bytes + check_bits;
}

}  // namespace modsum
