#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "modsum/fault.hpp"

namespace modsum {

// Probability of an undetected fault as a function of data word length,
// under an independent per-bit inversion model.
struct PudCurve {
    std::string algorithm;
    double ber = 0.0;
    std::vector<std::pair<std::uint64_t, double>> points;  // (length_bytes, pud)

    void write_csv(std::ostream& os, bool header = true) const;
};

// BER-weighted sum over fault weights:
//   sum_m C(N,m) * ber^m * (1-ber)^(N-m) * u(m),  N = 8*length + k,
// with u(m) from the table for m <= m_max (missing cells default to 2^-k)
// and a closed-form 2^-k tail for m > m_max when include_tail is set.
// Binomial terms are evaluated in log space.
double pud_at(const FractionTable& table, std::uint64_t length_bytes,
              unsigned check_bits, double ber, unsigned m_max,
              bool include_tail = true);

// Idealized reference curve: u(m) = 0 below the target HD, 2^-k at and above.
PudCurve ideal_curve(unsigned hd, unsigned check_bits,
                     std::span<const std::uint64_t> lengths, double ber);

PudCurve curve_sweep(std::string algorithm, const FractionTable& table,
                     std::span<const std::uint64_t> lengths, double ber,
                     unsigned check_bits, unsigned m_max = 8,
                     bool include_tail = true);

// log of C(N, m) * ber^m * (1-ber)^(N-m); exposed for variance bookkeeping
// in harness code.
double log_binomial_weight(std::uint64_t n_bits, unsigned m, double ber);

}  // namespace modsum
