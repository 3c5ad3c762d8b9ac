#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "modsum/fault.hpp"
#include "modsum/spec.hpp"

namespace modsum {

// 2^(8*(data_len-1-byte_index) + bit_in_byte + k) mod M: the additive effect
// (up to sign) of flipping that data bit on a Koopman check value.
std::uint64_t bit_weight(std::uint64_t byte_index, unsigned bit_in_byte,
                         std::uint64_t data_len, unsigned k, std::uint64_t modulus);

enum class CancelKind { DataData, DataCheck };

// A data-independent undetectable-fault mechanism located by a scan.
struct CancelFinding {
    std::uint64_t first_fail_bytes = 0;  // smallest data word length it fits in
    CancelKind kind = CancelKind::DataData;
    std::uint64_t unit_exponent = 0;  // smallest t with 2^t = +-1 (mod M)
    bool unit_negative = false;
    // DataCheck mechanism: data bit with shifted-domain exponent `exponent`
    // pairs with sum bit `check_bit`; 2^(exponent - check_bit) = +-1 per
    // `pair_negative`.
    std::uint64_t exponent = 0;
    unsigned check_bit = 0;
    bool pair_negative = false;
};

// Smallest data word length with an undetectable 2-bit fault for a Koopman
// checksum (modulus M, k check bits), or nullopt when none exists up to
// max_data_bytes. Check-check pairs cannot cancel and are excluded.
std::optional<CancelFinding> two_bit_cancellation_scan(std::uint64_t modulus,
                                                       unsigned k,
                                                       std::uint64_t max_data_bytes);

// Smallest data word length with an undetectable fault of weight < 4 for the
// checksum+parity variant (modulus occupies k-1 bits), or nullopt within
// max_data_bytes.
std::optional<CancelFinding> parity_hd4_scan(std::uint64_t modulus, unsigned k,
                                             std::uint64_t max_data_bytes);

// Concrete undetectable instance of a finding at the given length: a data
// word plus the fault pattern that verify_codeword fails to detect.
struct WitnessCase {
    std::vector<std::uint8_t> data;
    FaultPattern pattern;
};
WitnessCase build_witness(const CancelFinding& finding, const AlgorithmSpec& spec,
                          std::uint64_t length_bytes);

struct RolloverReport {
    std::uint64_t modulus = 0;
    unsigned check_bits = 0;
    Family family = Family::Koopman;
    unsigned hd = 3;
    std::uint64_t scanned_up_to = 0;
    std::optional<CancelFinding> finding;  // none: HD holds through scanned_up_to

    std::optional<std::uint64_t> first_fail_bytes() const {
        if (finding) return finding->first_fail_bytes;
        return std::nullopt;
    }
    // Largest length where the target HD is known to hold.
    std::uint64_t max_hd_length_bytes() const {
        return finding ? finding->first_fail_bytes - 1 : scanned_up_to;
    }
};

RolloverReport koopman_rollover(std::uint64_t modulus, unsigned k,
                                std::uint64_t max_data_bytes);
RolloverReport koopman_parity_rollover(std::uint64_t modulus, unsigned k,
                                       std::uint64_t max_data_bytes);

void write_rollover_csv(std::ostream& os, const RolloverReport& report,
                        bool header = true);

// ((modulus - 1) * block_bytes + 1): first data word length at which the
// dual-sum running process can roll over. The value one below it is the last
// length the formula leaves covered.
std::uint64_t dual_sum_rollover(std::uint64_t modulus, unsigned block_bytes);

struct ScreenEntry {
    std::uint64_t modulus = 0;
    std::uint64_t max_hd_length_bytes = 0;
    std::optional<std::uint64_t> first_fail_bytes;
};

struct ScreenResult {
    unsigned check_bits = 0;
    unsigned hd = 3;
    std::uint64_t range_lo = 0, range_hi = 0;
    std::uint64_t scanned_up_to = 0;
    // Descending by max HD length; ties broken by the larger modulus, which
    // makes better use of the check value range.
    std::vector<ScreenEntry> ranked;

    void write_csv(std::ostream& os, bool header = true) const;
};

// Ranks every modulus in [lo, hi] by the longest length at which the target
// HD holds (3: plain Koopman; 4: checksum+parity). Even moduli are rejected
// with a zero score.
ScreenResult screen_moduli(unsigned k, std::uint64_t lo, std::uint64_t hi,
                           unsigned hd, std::uint64_t max_data_bytes);

}  // namespace modsum
