#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <vector>

#include "modsum/fault.hpp"
#include "modsum/pud.hpp"

using namespace modsum;
using big_float = boost::multiprecision::cpp_bin_float_50;
using boost::multiprecision::cpp_int;

namespace {

FractionTable table_with(std::uint64_t length, std::vector<std::pair<unsigned, double>> us) {
    FractionTable table;
    table.algorithm = "test";
    for (auto [m, u] : us) {
        CellCounts cell;
        cell.total = 1'000'000'000;
        cell.undetected = static_cast<std::uint64_t>(u * 1e9 + 0.5);
        cell.mode = CountMode::Exhaustive;
        table.cells[{length, m}] = cell;
    }
    return table;
}

// High-precision reference: exact binomial coefficient, wide-float powers.
big_float reference_weight(std::uint64_t n, unsigned m, double ber) {
    cpp_int c = 1;
    for (unsigned i = 1; i <= m; ++i) c = c * (n - m + i) / i;
    big_float w(c);
    w *= pow(big_float(ber), m);
    w *= pow(big_float(1) - big_float(ber), static_cast<double>(n - m));
    return w;
}

}  // namespace

TEST_CASE("pud vanishes at zero BER and with zero fractions") {
    FractionTable table = table_with(3, {{1, 0.0}, {2, 0.0}});
    CHECK(pud_at(table, 3, 16, 0.0, 2) == 0.0);
    CHECK(pud_at(table, 3, 16, 1e-6, 2, /*include_tail=*/false) == 0.0);
    CHECK_THROWS(pud_at(table, 3, 16, 1.0, 2));
}

TEST_CASE("single-term closed form: N=24, only u(2) set") {
    const double x = 0.37;
    FractionTable table = table_with(1, {{1, 0.0}, {2, x}, {3, 0.0}});
    double got = pud_at(table, 1, 16, 1e-6, 3, /*include_tail=*/false);
    // C(24,2) * ber^2 * (1-ber)^22 * x
    big_float want = reference_weight(24, 2, 1e-6) * big_float(x);
    CHECK(std::abs(got - static_cast<double>(want)) <=
          1e-12 * static_cast<double>(want));
}

TEST_CASE("u(m) = 2^-k everywhere collapses to the closed form") {
    const double ber = 1e-4;
    const unsigned k = 16;
    FractionTable empty;  // every cell missing -> defaults to 2^-k
    for (std::uint64_t length : {1ull, 64ull, 1000ull}) {
        const std::uint64_t n = 8 * length + k;
        double got = pud_at(empty, length, k, ber, 8);
        double want = std::ldexp(1.0 - std::pow(1.0 - ber, static_cast<double>(n)), -16);
        CHECK(got == doctest::Approx(want).epsilon(1e-9));
    }
}

TEST_CASE("pud is monotone in each u(m) and in ber") {
    FractionTable lo = table_with(100, {{1, 0.0}, {2, 1e-6}, {3, 1e-5}});
    FractionTable hi = table_with(100, {{1, 0.0}, {2, 2e-6}, {3, 1e-5}});
    CHECK(pud_at(lo, 100, 16, 1e-6, 3) < pud_at(hi, 100, 16, 1e-6, 3));
    CHECK(pud_at(lo, 100, 16, 1e-6, 3) < pud_at(lo, 100, 16, 1e-5, 3));
}

TEST_CASE("log-space evaluation tracks the high-precision reference") {
    for (std::uint64_t n_bits : {100ull, 5000ull, 50000ull}) {
        for (double ber : {1e-3, 1e-6, 1e-9}) {
            for (unsigned m = 1; m <= 10; ++m) {
                double got = std::exp(log_binomial_weight(n_bits, m, ber));
                big_float want = reference_weight(n_bits, m, ber);
                double rel = std::abs(got - static_cast<double>(want)) /
                             static_cast<double>(want);
                CAPTURE(n_bits); CAPTURE(ber); CAPTURE(m);
                CHECK(rel <= 1e-9);
            }
        }
    }
}

TEST_CASE("ideal curves order by HD and match the direct sum") {
    std::vector<std::uint64_t> lengths{16, 256, 1024, 4096};
    PudCurve hd2 = ideal_curve(2, 16, lengths, 1e-6);
    PudCurve hd3 = ideal_curve(3, 16, lengths, 1e-6);
    PudCurve hd4 = ideal_curve(4, 16, lengths, 1e-6);
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        CHECK(hd3.points[i].second < hd2.points[i].second);
        CHECK(hd4.points[i].second < hd3.points[i].second);
    }
    CHECK(ideal_curve(2, 16, lengths, 0.0).points[0].second == 0.0);

    // Same numbers through pud_at with an explicit u-table.
    FractionTable t = table_with(1024, {{1, 0.0}, {2, 0.0}, {3, 1.0 / 65536}});
    double via_table = pud_at(t, 1024, 16, 1e-6, 3);
    CHECK(hd3.points[2].second == doctest::Approx(via_table).epsilon(1e-12));
}

TEST_CASE("single-sum mod 2^16 tracks the ideal HD=2 slope at long lengths") {
    // The measured curve sits above the idealized one (its 2-bit fraction
    // far exceeds 2^-k) but grows with the same length-squared shape.
    AlgorithmSpec spec = AlgorithmSpec::make(Family::SingleSum, 65536, 16, 2);
    std::vector<std::uint64_t> lengths{1024, 4096};
    std::vector<unsigned> ms{1, 2};
    SweepConfig cfg;
    cfg.trial.trials = 100000;
    cfg.trial.rng_seed = 60;
    FractionTable table = sweep(spec, lengths, ms, cfg);
    PudCurve measured = curve_sweep("add65536_b2", table, lengths, 1e-6, 16, 2, false);
    PudCurve ideal = ideal_curve(2, 16, lengths, 1e-6);

    auto slope = [](const PudCurve& c) {
        return std::log(c.points[1].second / c.points[0].second) /
               std::log(static_cast<double>(c.points[1].first) /
                        static_cast<double>(c.points[0].first));
    };
    CHECK(measured.points[0].second > ideal.points[0].second);
    CHECK(std::abs(slope(measured) - slope(ideal)) < 0.3);
}

TEST_CASE("curve_sweep maps lengths and serializes") {
    FractionTable table = table_with(8, {{1, 0.0}, {2, 0.5}});
    PudCurve empty = curve_sweep("x", table, {}, 1e-6, 16, 2);
    CHECK(empty.points.empty());

    std::vector<std::uint64_t> lengths{8};
    PudCurve curve = curve_sweep("x", table, lengths, 1e-6, 16, 2, false);
    REQUIRE(curve.points.size() == 1);
    CHECK(curve.points[0].first == 8);
    std::ostringstream os;
    curve.write_csv(os);
    std::string text = os.str();
    CHECK(text.rfind("algorithm,ber,length_bytes,pud\n", 0) == 0);
    CHECK(text.find("x,1e-06,8,") != std::string::npos);
}
