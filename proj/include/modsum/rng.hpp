#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace modsum {

// Deterministic randomness for fault-injection experiments.
//
// std::mt19937_64 output is fully specified by the standard, so streams
// reproduce across platforms and compilers. Bounded draws use rejection
// sampling instead of std::uniform_int_distribution, whose mapping is
// implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    // Uniform in [0, bound), bound >= 1.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = gen_();
            if (r >= threshold) return r % bound;
        }
    }

    void fill(std::span<std::uint8_t> out) {
        std::size_t i = 0;
        while (i + 8 <= out.size()) {
            std::uint64_t word = gen_();
            for (int j = 0; j < 8; ++j) out[i++] = static_cast<std::uint8_t>(word >> (8 * j));
        }
        if (i < out.size()) {
            std::uint64_t word = gen_();
            for (int j = 0; j < 8 && i < out.size(); ++j)
                out[i++] = static_cast<std::uint8_t>(word >> (8 * j));
        }
    }

    // m distinct values in [0, n), ascending (Floyd's subset sampling).
    std::vector<std::uint64_t> distinct(unsigned m, std::uint64_t n) {
        std::vector<std::uint64_t> out;
        out.reserve(m);
        for (std::uint64_t j = n - m; j < n; ++j) {
            std::uint64_t t = below(j + 1);
            bool present = false;
            for (std::uint64_t v : out) present |= (v == t);
            out.push_back(present ? j : t);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    std::mt19937_64 gen_;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Stream-split rule for sweep cells: the (length, m) coordinates are mixed
// into the base seed, so each cell gets an independent reproducible stream
// no matter which order cells run in.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = splitmix64(base);
    s = splitmix64(s ^ a);
    s = splitmix64(s ^ b);
    return s;
}

}  // namespace modsum
