#include "modsum/pud.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace modsum {

double log_binomial_weight(std::uint64_t n_bits, unsigned m, double ber) {
    const double n = static_cast<double>(n_bits);
    const double md = static_cast<double>(m);
    return std::lgamma(n + 1) - std::lgamma(md + 1) - std::lgamma(n - md + 1) +
           md * std::log(ber) + (n - md) * std::log1p(-ber);
}

double pud_at(const FractionTable& table, std::uint64_t length_bytes,
              unsigned check_bits, double ber, unsigned m_max,
              bool include_tail) {
    if (ber < 0.0 || ber >= 1.0)
        throw std::invalid_argument("ber must lie in [0, 1)");
    if (ber == 0.0) return 0.0;

    const std::uint64_t n_bits = 8 * length_bytes + check_bits;
    const double tail_u = std::ldexp(1.0, -static_cast<int>(check_bits));

    double pud = 0.0;
    double weight_sum = std::exp(static_cast<double>(n_bits) * std::log1p(-ber));
    const unsigned top = static_cast<unsigned>(
        std::min<std::uint64_t>(m_max, n_bits));
    for (unsigned m = 1; m <= top; ++m) {
        const double w = std::exp(log_binomial_weight(n_bits, m, ber));
        const CellCounts* cell = table.find(length_bytes, m);
        pud += w * (cell ? cell->fraction() : tail_u);
        weight_sum += w;
    }
    if (include_tail && n_bits > top)
        pud += tail_u * std::max(0.0, 1.0 - weight_sum);
    return pud;
}

PudCurve ideal_curve(unsigned hd, unsigned check_bits,
                     std::span<const std::uint64_t> lengths, double ber) {
    if (hd < 1) throw std::invalid_argument("hd must be >= 1");
    PudCurve curve;
    curve.algorithm =
        "ideal_hd" + std::to_string(hd) + "_k" + std::to_string(check_bits);
    curve.ber = ber;
    const double tail_u = std::ldexp(1.0, -static_cast<int>(check_bits));
    for (std::uint64_t length : lengths) {
        double pud = 0.0;
        if (ber > 0.0) {
            // u(m) = 2^-k for all m >= hd collapses to
            // 2^-k * (1 - sum_{m<hd} w_m).
            const std::uint64_t n_bits = 8 * length + check_bits;
            double below = std::exp(static_cast<double>(n_bits) * std::log1p(-ber));
            for (unsigned m = 1; m < hd && m <= n_bits; ++m)
                below += std::exp(log_binomial_weight(n_bits, m, ber));
            pud = tail_u * std::max(0.0, 1.0 - below);
        }
        curve.points.emplace_back(length, pud);
    }
    return curve;
}

PudCurve curve_sweep(std::string algorithm, const FractionTable& table,
                     std::span<const std::uint64_t> lengths, double ber,
                     unsigned check_bits, unsigned m_max, bool include_tail) {
    PudCurve curve;
    curve.algorithm = std::move(algorithm);
    curve.ber = ber;
    for (std::uint64_t length : lengths)
        curve.points.emplace_back(
            length, pud_at(table, length, check_bits, ber, m_max, include_tail));
    return curve;
}

void PudCurve::write_csv(std::ostream& os, bool header) const {
    if (header) os << "algorithm,ber,length_bytes,pud\n";
    char ber_buf[32], pud_buf[32];
    std::snprintf(ber_buf, sizeof ber_buf, "%.12g", ber);
    for (const auto& [length, pud] : points) {
        std::snprintf(pud_buf, sizeof pud_buf, "%.12g", pud);
        os << algorithm << ',' << ber_buf << ',' << length << ',' << pud_buf << '\n';
    }
}

}  // namespace modsum
