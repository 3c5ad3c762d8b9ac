#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <sstream>
#include <vector>

#include "modsum/errors.hpp"
#include "modsum/fault.hpp"
#include "modsum/hd_analysis.hpp"
#include "modsum/modmath.hpp"

using namespace modsum;
using bytes = std::vector<std::uint8_t>;

TEST_CASE("bit_weight") {
    // Lowest data bit of the last byte sits just above the appended zeros.
    CHECK(bit_weight(9, 0, 10, 8, 253) == 3);     // 2^8  % 253
    CHECK(bit_weight(9, 7, 10, 8, 253) == 0x83);  // 2^15 % 253
    CHECK(bit_weight(0, 0, 1, 16, 65519) == mod_pow(2, 16, 65519));

    // Multiplying by the inverse power undoes the weight.
    std::uint64_t w = bit_weight(2, 5, 7, 8, 253);
    std::uint64_t inv = mod_inverse(mod_pow(2, 8 * 4 + 5 + 8, 253), 253);
    CHECK(Modulus(253).mul(w, inv) == 1);
}

TEST_CASE("two-bit cancellation scan reproduces the 8-bit rollovers") {
    auto m239 = two_bit_cancellation_scan(239, 8, 64);
    REQUIRE(m239.has_value());
    CHECK(m239->first_fail_bytes == 14);  // HD=3 through 13 bytes

    auto m253 = two_bit_cancellation_scan(253, 8, 64);
    REQUIRE(m253.has_value());
    CHECK(m253->first_fail_bytes == 13);  // HD=3 through 12 bytes

    CHECK_FALSE(two_bit_cancellation_scan(239, 8, 13).has_value());
    CHECK_THROWS_AS(two_bit_cancellation_scan(238, 8, 64), EvenModulus);
}

TEST_CASE("16-bit boundary: safe at 4092, first failure at 4093") {
    CHECK_FALSE(two_bit_cancellation_scan(65519, 16, 4092).has_value());
    auto finding = two_bit_cancellation_scan(65519, 16, 4096);
    REQUIRE(finding.has_value());
    CHECK(finding->first_fail_bytes == 4093);
}

TEST_CASE("32-bit order computation") {
    // No 2-bit vulnerability anywhere near practical lengths...
    CHECK_FALSE(two_bit_cancellation_scan(4294967291ull, 32, 134217720).has_value());
    // ...and the true first failure, from the order structure.
    auto finding = two_bit_cancellation_scan(4294967291ull, 32, 1u << 29);
    REQUIRE(finding.has_value());
    CHECK(finding->first_fail_bytes == 268435452);
}

TEST_CASE("parity HD=4 scans") {
    auto m125 = parity_hd4_scan(125, 8, 64);
    REQUIRE(m125.has_value());
    CHECK(m125->first_fail_bytes == 6);  // HD=4 through 5 bytes

    auto m32749 = parity_hd4_scan(32749, 16, 4096);
    REQUIRE(m32749.has_value());
    CHECK(m32749->first_fail_bytes == 2045);  // HD=4 through 2044 bytes

    CHECK_FALSE(parity_hd4_scan(2147483629ull, 32, 134217720).has_value());
    auto k32p = parity_hd4_scan(2147483629ull, 32, 1u << 29);
    REQUIRE(k32p.has_value());
    CHECK(k32p->first_fail_bytes == 134217723);
}

TEST_CASE("scan verdicts match exhaustive 2-bit enumeration for all odd 8-bit moduli") {
    ExhaustiveConfig cfg;
    cfg.rng_seed = 424242;
    for (std::uint64_t m = 129; m <= 255; m += 2) {
        auto finding = two_bit_cancellation_scan(m, 8, 20);
        AlgorithmSpec spec = AlgorithmSpec::make(Family::Koopman, m, 8);
        for (std::uint64_t n = 1; n <= 20; ++n) {
            bool scan_vulnerable = finding && finding->first_fail_bytes <= n;
            auto [undetected, total] =
                exhaustive_undetected_count(spec, n, 2, DataModel::RandomBytes, cfg);
            CAPTURE(m); CAPTURE(n); CAPTURE(undetected);
            REQUIRE(scan_vulnerable == (undetected > 0));
        }
    }
}

TEST_CASE("parity scan verdict matches exhaustive weight<=3 enumeration (M=125)") {
    AlgorithmSpec spec = *preset_spec("koopman8p");
    for (std::uint64_t n = 1; n <= 8; ++n) {
        bool any = false;
        for (unsigned m = 1; m <= 3 && !any; ++m) {
            auto [undetected, total] =
                exhaustive_undetected_count(spec, n, m, DataModel::RandomBytes);
            any = undetected > 0;
        }
        auto finding = parity_hd4_scan(125, 8, 8);
        bool scan_vulnerable = finding && finding->first_fail_bytes <= n;
        CAPTURE(n);
        CHECK(scan_vulnerable == any);
    }
}

TEST_CASE("witnesses are genuinely undetected") {
    struct Case {
        const char* preset;
        std::uint64_t length;
    };
    for (const Case& c : {Case{"koopman8", 13}, Case{"koopman8", 20},
                          Case{"koopman8-239", 14}, Case{"koopman16", 4093},
                          Case{"koopman16", 4094}, Case{"koopman8p", 6},
                          Case{"koopman16p", 2045}}) {
        AlgorithmSpec spec = *preset_spec(c.preset);
        auto finding =
            spec.family == Family::KoopmanParity
                ? parity_hd4_scan(spec.modulus, spec.check_bits, c.length)
                : two_bit_cancellation_scan(spec.modulus, spec.check_bits, c.length);
        REQUIRE(finding.has_value());
        WitnessCase witness = build_witness(*finding, spec, c.length);
        CHECK(witness.pattern.positions.size() == 2);
        CodeWord cw = encode_codeword(witness.data, spec);
        CodeWord corrupted = apply_faults(cw, witness.pattern, spec.check_bits);
        CHECK(corrupted != cw);
        CAPTURE(c.length);
        CHECK(verify_codeword(corrupted, spec));  // fault goes unnoticed
    }
}

TEST_CASE("witness construction honors a nonzero seed") {
    AlgorithmSpec spec = AlgorithmSpec::make(Family::Koopman, 253, 8, 1, 0x5A);
    auto finding = two_bit_cancellation_scan(253, 8, 16);
    REQUIRE(finding.has_value());
    WitnessCase witness = build_witness(*finding, spec, finding->first_fail_bytes);
    CodeWord corrupted =
        apply_faults(encode_codeword(witness.data, spec), witness.pattern, 8);
    CHECK(verify_codeword(corrupted, spec));
}

TEST_CASE("8-bit screening ranks 239 first") {
    ScreenResult result = screen_moduli(8, 128, 255, 3, 64);
    REQUIRE_FALSE(result.ranked.empty());
    CHECK(result.ranked[0].modulus == 239);
    CHECK(result.ranked[0].max_hd_length_bytes == 13);
    // 227 shares the length-13 score; the larger modulus wins the tie.
    CHECK(result.ranked[1].modulus == 227);
    CHECK(result.ranked[1].max_hd_length_bytes == 13);

    bool found253 = false;
    for (const auto& entry : result.ranked) {
        if (entry.modulus == 253) {
            found253 = true;
            CHECK(entry.max_hd_length_bytes == 12);
        }
        if (entry.modulus % 2 == 0) CHECK(entry.max_hd_length_bytes == 0);
    }
    CHECK(found253);
}

TEST_CASE("16-bit screening over the full range selects 65519") {
    ScreenResult result = screen_moduli(16, 32768, 65535, 3, 1u << 20);
    CHECK(result.ranked[0].modulus == 65519);
    CHECK(result.ranked[0].max_hd_length_bytes == 4092);
}

TEST_CASE("screening validates its arguments") {
    CHECK_THROWS_AS(screen_moduli(8, 128, 300, 3, 64), InvalidSpec);
    CHECK_THROWS_AS(screen_moduli(8, 128, 255, 4, 64), InvalidSpec);  // > 2^(k-1)
    CHECK_THROWS_AS(screen_moduli(8, 128, 255, 5, 64), InvalidSpec);
    CHECK_NOTHROW(screen_moduli(8, 65, 127, 4, 64));
}

TEST_CASE("dual-sum rollover formula") {
    CHECK(dual_sum_rollover(239, 14) == 3333);
    CHECK(dual_sum_rollover(239, 14) - 1 == 3332);
    CHECK(dual_sum_rollover(255, 1) == 255);
    CHECK(dual_sum_rollover(2, 1) == 2);
}

TEST_CASE("fletcher16 first 2-bit failure sits exactly at the formula value") {
    AlgorithmSpec fletcher = *preset_spec("fletcher16");
    auto [u254, t254] =
        exhaustive_undetected_count(fletcher, 254, 2, DataModel::AllZero);
    CHECK(u254 == 0);
    auto [u255, t255] =
        exhaustive_undetected_count(fletcher, 255, 2, DataModel::AllZero);
    CHECK(u255 > 0);
}

TEST_CASE("rollover reports and CSV") {
    RolloverReport report = koopman_rollover(65519, 16, 1u << 20);
    CHECK(report.max_hd_length_bytes() == 4092);
    CHECK(report.first_fail_bytes() == 4093);
    std::ostringstream os;
    write_rollover_csv(os, report);
    CHECK(os.str() ==
          "modulus,k,family,hd,max_len_bytes,first_fail_bytes\n"
          "65519,16,koopman,3,4092,4093\n");

    RolloverReport capped = koopman_rollover(65519, 16, 1000);
    CHECK_FALSE(capped.first_fail_bytes().has_value());
    CHECK(capped.max_hd_length_bytes() == 1000);
    std::ostringstream os2;
    write_rollover_csv(os2, capped, false);
    CHECK(os2.str() == "65519,16,koopman,3,1000,\n");
}
