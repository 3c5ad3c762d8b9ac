#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace modsum {

// Reduction helper for a fixed divisor. Precomputes floor(2^64 / m) so that
// x % m costs one widening multiply plus a couple of conditional subtracts
// instead of a hardware division in the per-byte checksum loops.
class Modulus {
public:
    explicit Modulus(std::uint64_t m);

    std::uint64_t value() const { return m_; }

    // x % m, valid for any 64-bit x.
    std::uint64_t reduce(std::uint64_t x) const {
        std::uint64_t q = static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(x) * inv_) >> 64);
        std::uint64_t r = x - q * m_;
        while (r >= m_) r -= m_;
        return r;
    }

    // (a * b) % m via 128-bit intermediate.
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        return static_cast<std::uint64_t>(
            static_cast<unsigned __int128>(a) * b % m_);
    }

    std::uint64_t pow(std::uint64_t base, std::uint64_t exp) const;

private:
    std::uint64_t m_;
    std::uint64_t inv_;
};

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

// Inverse of a modulo m; requires gcd(a, m) == 1.
std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m);

// Trial-division factorization, (prime, exponent) pairs in ascending order.
// Intended for the 32-bit-range moduli this library works with.
std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);

// Carmichael function for odd m >= 1.
std::uint64_t carmichael_odd(std::uint64_t m);

// Multiplicative order of 2 modulo odd m >= 3.
std::uint64_t multiplicative_order2(std::uint64_t m);

// Smallest t >= 1 with 2^t congruent to +1 or -1 modulo odd m >= 3.
// Every exponent with 2^t = +-1 is a multiple of this one.
struct PowerOfTwoUnit {
    std::uint64_t t = 0;
    bool negative = false;  // true when 2^t = m - 1
};
PowerOfTwoUnit smallest_pm1_exponent(std::uint64_t m);

}  // namespace modsum
