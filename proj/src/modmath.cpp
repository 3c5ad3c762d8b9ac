#include "modsum/modmath.hpp"

#include <numeric>
#include <stdexcept>

namespace modsum {

Modulus::Modulus(std::uint64_t m) : m_(m) {
    if (m < 2) throw std::invalid_argument("modulus must be >= 2");
    // ~0 / m equals floor(2^64 / m) except when m divides 2^64 exactly;
    // then it is one short, which only adds one corrective subtract.
    inv_ = ~std::uint64_t{0} / m;
}

std::uint64_t Modulus::pow(std::uint64_t base, std::uint64_t exp) const {
    std::uint64_t result = 1 % m_;
    std::uint64_t b = base % m_;
    while (exp) {
        if (exp & 1) result = mul(result, b);
        b = mul(b, b);
        exp >>= 1;
    }
    return result;
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    return Modulus(m).pow(base, exp);
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m) {
    // Extended Euclid on signed 128-bit values to avoid overflow concerns.
    __int128 t = 0, new_t = 1;
    __int128 r = m, new_r = a % m;
    while (new_r != 0) {
        __int128 q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (r != 1) throw std::invalid_argument("mod_inverse: arguments not coprime");
    if (t < 0) t += m;
    return static_cast<std::uint64_t>(t);
}

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, int>> factors;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2) ? 1 : 2) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) n /= p, ++e;
        factors.emplace_back(p, e);
    }
    if (n > 1) factors.emplace_back(n, 1);
    return factors;
}

std::uint64_t carmichael_odd(std::uint64_t m) {
    if (m % 2 == 0) throw std::invalid_argument("carmichael_odd: m must be odd");
    std::uint64_t lambda = 1;
    for (auto [p, e] : factorize(m)) {
        std::uint64_t term = p - 1;
        for (int i = 1; i < e; ++i) term *= p;
        lambda = std::lcm(lambda, term);
    }
    return lambda;
}

std::uint64_t multiplicative_order2(std::uint64_t m) {
    if (m < 3 || m % 2 == 0)
        throw std::invalid_argument("multiplicative_order2: m must be odd and >= 3");
    Modulus mod(m);
    std::uint64_t order = carmichael_odd(m);
    for (auto [p, e] : factorize(order)) {
        (void)e;
        while (order % p == 0 && mod.pow(2, order / p) == 1) order /= p;
    }
    return order;
}

PowerOfTwoUnit smallest_pm1_exponent(std::uint64_t m) {
    std::uint64_t order = multiplicative_order2(m);
    // 2^t = -1 is possible only at t = order/2: any such t satisfies
    // order | 2t but not order | t, so t is an odd multiple of order/2,
    // and (2^(order/2))^odd = 2^(order/2).
    if (order % 2 == 0 && mod_pow(2, order / 2, m) == m - 1)
        return {order / 2, true};
    return {order, false};
}

}  // namespace modsum
