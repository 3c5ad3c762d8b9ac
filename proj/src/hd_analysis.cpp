#include "modsum/hd_analysis.hpp"

#include <algorithm>
#include <ostream>

#include "modsum/errors.hpp"
#include "modsum/modmath.hpp"

namespace modsum {

namespace {

constexpr std::uint64_t ceil_div8(std::uint64_t v) { return (v + 7) / 8; }

// Shared engine for the plain and parity scans. `shift_k` is the zero-append
// width (always the full check size); `sum_bits` is how many check value bits
// hold the modular sum (k for plain, k-1 for the parity variant, where sum
// bit c sits at check value bit c+1).
//
// Mechanisms, for data bit flips acting as +-2^e on the sum (e >= shift_k):
//   data-data:  2^(e1-e2) = +-1 (mod M); first length with 8n-1 >= t*.
//   data-check: 2^e = +-2^c (mod M) plus a residue v whose stored check,
//               with bit c flipped, equals the corrupted sum exactly.
// Exponent differences with 2^d = +-1 are exactly the multiples of t*, the
// smallest such exponent.
std::optional<CancelFinding> scan_engine(std::uint64_t M, unsigned shift_k,
                                         unsigned sum_bits,
                                         std::uint64_t max_data_bytes) {
    if (M % 2 == 0)
        throw EvenModulus("cancellation scan requires an odd modulus");
    if (M < 3) throw InvalidSpec("modulus must be >= 3");

    const PowerOfTwoUnit unit = smallest_pm1_exponent(M);
    const std::uint64_t t = unit.t;

    std::optional<CancelFinding> best;
    const std::uint64_t n_dd = ceil_div8(t + 1);
    if (n_dd <= max_data_bytes) {
        CancelFinding f;
        f.first_fail_bytes = n_dd;
        f.kind = CancelKind::DataData;
        f.unit_exponent = t;
        f.unit_negative = unit.negative;
        best = f;
    }

    for (std::uint64_t j = 1;; ++j) {
        if (t > (8 * max_data_bytes + shift_k) / j) break;  // d out of reach
        const std::uint64_t d = j * t;
        const std::uint64_t e_floor = std::max<std::uint64_t>(d, shift_k);
        const std::uint64_t n_floor = ceil_div8(e_floor - shift_k + 1);
        if (n_floor > max_data_bytes) break;
        if (best && n_floor >= best->first_fail_bytes) break;
        const bool negative = unit.negative && (j % 2 == 1);

        const unsigned c_lo = d >= shift_k ? 0u : static_cast<unsigned>(shift_k - d);
        for (unsigned c = c_lo; c < sum_bits; ++c) {
            if (c >= 63 || (std::uint64_t{1} << c) >= M) continue;
            // Witness residue: flipping a suitable data bit adds
            // sigma*2^e = 2^c (mod M) for sigma=+1 when 2^d = +1, or
            // -2^c when 2^d = -1. Enumerate v until the integer-exact
            // match with the flipped stored value is possible.
            std::optional<std::uint64_t> witness;
            for (std::uint64_t v = negative ? (std::uint64_t{1} << c) : 0; v < M; ++v) {
                if (negative ? ((v >> c) & 1) != 0
                             : (((v >> c) & 1) == 0 && v + (std::uint64_t{1} << c) < M)) {
                    witness = v;
                    break;
                }
            }
            if (!witness) continue;
            const std::uint64_t e = d + c;
            const std::uint64_t n_c = ceil_div8(e - shift_k + 1);
            if (n_c > max_data_bytes) break;
            if (!best || n_c < best->first_fail_bytes) {
                CancelFinding f;
                f.first_fail_bytes = n_c;
                f.kind = CancelKind::DataCheck;
                f.unit_exponent = t;
                f.unit_negative = unit.negative;
                f.exponent = e;
                f.check_bit = c;
                f.pair_negative = negative;
                best = f;
            }
            break;  // larger c only pushes the length out
        }
    }
    return best;
}

// Fault position of the data bit at shifted-domain exponent e (>= shift_k):
// V-bit p = e - shift_k lives in byte n-1-p/8, bit p%8.
std::uint64_t data_bit_position(std::uint64_t e, unsigned shift_k, std::uint64_t n) {
    const std::uint64_t p = e - shift_k;
    const std::uint64_t byte_index = n - 1 - p / 8;
    return 8 * byte_index + (p % 8);
}

}  // namespace

std::uint64_t bit_weight(std::uint64_t byte_index, unsigned bit_in_byte,
                         std::uint64_t data_len, unsigned k, std::uint64_t modulus) {
    const std::uint64_t exponent = 8 * (data_len - 1 - byte_index) + bit_in_byte + k;
    return mod_pow(2, exponent, modulus);
}

std::optional<CancelFinding> two_bit_cancellation_scan(std::uint64_t modulus,
                                                       unsigned k,
                                                       std::uint64_t max_data_bytes) {
    if (k < 4 || k > 32 || modulus > (std::uint64_t{1} << k))
        throw InvalidSpec("scan requires 4 <= k <= 32 and modulus <= 2^k");
    return scan_engine(modulus, k, k, max_data_bytes);
}

std::optional<CancelFinding> parity_hd4_scan(std::uint64_t modulus, unsigned k,
                                             std::uint64_t max_data_bytes) {
    if (k < 4 || k > 32 || modulus > (std::uint64_t{1} << (k - 1)))
        throw InvalidSpec("parity scan requires modulus <= 2^(k-1)");
    return scan_engine(modulus, k, k - 1, max_data_bytes);
}

WitnessCase build_witness(const CancelFinding& finding, const AlgorithmSpec& spec,
                          std::uint64_t length_bytes) {
    const std::uint64_t M = spec.modulus;
    const unsigned k = spec.check_bits;
    const std::uint64_t n = length_bytes;
    // Sum-field bits sit one position up in the parity variant (bit 0 is
    // the parity bit).
    const unsigned check_bit_offset = spec.family == Family::KoopmanParity ? 1 : 0;

    WitnessCase out;
    out.data.assign(n, 0);

    auto set_v_bit = [&](std::uint64_t p) {
        out.data[n - 1 - p / 8] |= static_cast<std::uint8_t>(1u << (p % 8));
    };

    if (finding.kind == CancelKind::DataData) {
        const std::uint64_t t = finding.unit_exponent;
        // V-bit pair (t, 0): same flip direction cancels when 2^t = -1,
        // opposite directions when 2^t = +1 (so plant a 1 at bit 0).
        if (!finding.unit_negative) set_v_bit(0);
        out.pattern.positions = {data_bit_position(t + k, k, n),
                                 data_bit_position(0 + k, k, n)};
    } else {
        const std::uint64_t p = finding.exponent - k;
        const unsigned c = finding.check_bit;
        // Find a data word whose check residue v admits the integer-exact
        // match, with the flipped data bit currently 0 (flip adds +2^e).
        const std::uint64_t inv = mod_inverse(mod_pow(2, k, M), M);
        std::optional<std::uint64_t> chosen;
        for (std::uint64_t v = 0; v < M; ++v) {
            const bool ok = finding.pair_negative
                                ? ((v >> c) & 1) != 0
                                : (((v >> c) & 1) == 0 &&
                                   v + (std::uint64_t{1} << c) < M);
            if (!ok) continue;
            const std::uint64_t value = Modulus(M).mul(v, inv);
            if (p < 64 && ((value >> p) & 1)) continue;  // data bit must be 0
            chosen = value;
            break;
        }
        if (!chosen) throw Error("no witness residue exists for this finding");
        std::uint64_t value = *chosen;
        for (unsigned b = 0; value; ++b, value >>= 1)
            if (value & 1) set_v_bit(b);
        out.pattern.positions = {data_bit_position(finding.exponent, k, n),
                                 8 * n + check_bit_offset + c};
    }

    // The constructed word realizes V directly; pre-compensate the seed XOR
    // applied to the first block.
    for (unsigned i = 0; i < spec.block_bytes && i < n; ++i) {
        unsigned shift = 8 * (spec.block_bytes - 1 - i);
        if (shift < 64)
            out.data[i] ^= static_cast<std::uint8_t>(spec.seed >> shift);
    }

    std::sort(out.pattern.positions.begin(), out.pattern.positions.end());
    out.pattern.validate(n, k);
    return out;
}

RolloverReport koopman_rollover(std::uint64_t modulus, unsigned k,
                                std::uint64_t max_data_bytes) {
    RolloverReport report;
    report.modulus = modulus;
    report.check_bits = k;
    report.family = Family::Koopman;
    report.hd = 3;
    report.scanned_up_to = max_data_bytes;
    report.finding = two_bit_cancellation_scan(modulus, k, max_data_bytes);
    return report;
}

RolloverReport koopman_parity_rollover(std::uint64_t modulus, unsigned k,
                                       std::uint64_t max_data_bytes) {
    RolloverReport report;
    report.modulus = modulus;
    report.check_bits = k;
    report.family = Family::KoopmanParity;
    report.hd = 4;
    report.scanned_up_to = max_data_bytes;
    report.finding = parity_hd4_scan(modulus, k, max_data_bytes);
    return report;
}

void write_rollover_csv(std::ostream& os, const RolloverReport& report, bool header) {
    if (header) os << "modulus,k,family,hd,max_len_bytes,first_fail_bytes\n";
    os << report.modulus << ',' << report.check_bits << ','
       << family_name(report.family) << ',' << report.hd << ','
       << report.max_hd_length_bytes() << ',';
    if (auto ff = report.first_fail_bytes()) os << *ff;
    os << '\n';
}

std::uint64_t dual_sum_rollover(std::uint64_t modulus, unsigned block_bytes) {
    return (modulus - 1) * block_bytes + 1;
}

void ScreenResult::write_csv(std::ostream& os, bool header) const {
    if (header) os << "modulus,k,family,hd,max_len_bytes,first_fail_bytes\n";
    const std::string_view family =
        hd >= 4 ? family_name(Family::KoopmanParity) : family_name(Family::Koopman);
    for (const auto& entry : ranked) {
        os << entry.modulus << ',' << check_bits << ',' << family << ',' << hd
           << ',' << entry.max_hd_length_bytes << ',';
        if (entry.first_fail_bytes) os << *entry.first_fail_bytes;
        os << '\n';
    }
}

ScreenResult screen_moduli(unsigned k, std::uint64_t lo, std::uint64_t hi,
                           unsigned hd, std::uint64_t max_data_bytes) {
    if (hd != 3 && hd != 4) throw InvalidSpec("screening supports HD targets 3 and 4");
    if (lo < 2 || lo > hi) throw InvalidSpec("bad modulus range");
    const std::uint64_t cap =
        hd == 3 ? (std::uint64_t{1} << k) : (std::uint64_t{1} << (k - 1));
    if (hi > cap) throw InvalidSpec("modulus range exceeds what the check value holds");

    ScreenResult result;
    result.check_bits = k;
    result.hd = hd;
    result.range_lo = lo;
    result.range_hi = hi;
    result.scanned_up_to = max_data_bytes;
    result.ranked.reserve(hi - lo + 1);
    for (std::uint64_t m = lo; m <= hi; ++m) {
        ScreenEntry entry;
        entry.modulus = m;
        if (m % 2 == 0) {
            // Even moduli pass the low bit through; rejected outright.
            entry.max_hd_length_bytes = 0;
        } else {
            auto finding = hd == 3 ? two_bit_cancellation_scan(m, k, max_data_bytes)
                                   : parity_hd4_scan(m, k, max_data_bytes);
            if (finding) {
                entry.first_fail_bytes = finding->first_fail_bytes;
                entry.max_hd_length_bytes = finding->first_fail_bytes - 1;
            } else {
                entry.max_hd_length_bytes = max_data_bytes;
            }
        }
        result.ranked.push_back(entry);
    }
    std::stable_sort(result.ranked.begin(), result.ranked.end(),
                     [](const ScreenEntry& a, const ScreenEntry& b) {
                         if (a.max_hd_length_bytes != b.max_hd_length_bytes)
                             return a.max_hd_length_bytes > b.max_hd_length_bytes;
                         return a.modulus > b.modulus;
                     });
    return result;
}

}  // namespace modsum
