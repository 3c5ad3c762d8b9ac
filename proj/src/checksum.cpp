#include "modsum/checksum.hpp"

#include <algorithm>
#include <bit>

#include "modsum/errors.hpp"
#include "modsum/modmath.hpp"

namespace modsum {

namespace {

void require_family(const AlgorithmSpec& spec, Family expected) {
    if (spec.family != expected)
        throw WrongFamily(std::string("operation requires family ") +
                          std::string(family_name(expected)) + ", got " +
                          std::string(family_name(spec.family)));
}

void require_nonempty(std::span<const std::uint8_t> data) {
    if (data.empty()) throw EmptyDataWord();
}

inline std::uint8_t seed_byte(std::uint64_t seed, unsigned block_bytes, unsigned idx) {
    unsigned shift = 8 * (block_bytes - 1 - idx);
    return shift >= 64 ? 0 : static_cast<std::uint8_t>(seed >> shift);
}

// Core shift/add/reduce fold. The seed is XORed into the first block and the
// final partial block is zero-padded, then `append_bits` zero bits are pushed
// through in block-sized (capped at 32-bit) steps. The running sum stays
// below the modulus after every reduction, so no intermediate exceeds
// 2^(k+8) - 1.
std::uint64_t koopman_fold(std::span<const std::uint8_t> data, const Modulus& mod,
                           unsigned block_bytes, std::uint64_t seed,
                           unsigned append_bits) {
    const std::uint64_t blocks =
        (data.size() + block_bytes - 1) / block_bytes;
    const std::uint64_t padded = blocks * block_bytes;

    std::uint64_t sum = 0;
    for (std::uint64_t i = 0; i < padded; ++i) {
        std::uint8_t b = i < data.size() ? data[i] : 0;
        if (i < block_bytes)
            b ^= seed_byte(seed, block_bytes, static_cast<unsigned>(i));
        sum = mod.reduce((sum << 8) + b);
    }

    const unsigned step_bits = std::min(8u * block_bytes, 32u);
    unsigned remaining = append_bits;
    while (remaining) {
        unsigned step = std::min(step_bits, remaining);
        sum = mod.reduce(sum << step);
        remaining -= step;
    }
    return sum;
}

// Folds one block starting at `offset` (zero-padded past the end of data)
// into a residue below the modulus.
inline std::uint64_t block_residue(std::span<const std::uint8_t> data,
                                   std::uint64_t offset, unsigned block_bytes,
                                   const Modulus& mod) {
    std::uint64_t r = 0;
    for (unsigned j = 0; j < block_bytes; ++j) {
        std::uint64_t idx = offset + j;
        std::uint8_t b = idx < data.size() ? data[idx] : 0;
        r = mod.reduce((r << 8) + b);
    }
    return r;
}

}  // namespace

std::uint64_t koopman_checksum(std::span<const std::uint8_t> data,
                               const AlgorithmSpec& spec) {
    require_family(spec, Family::Koopman);
    require_nonempty(data);
    Modulus mod(spec.modulus);
    return koopman_fold(data, mod, spec.block_bytes, spec.seed, spec.check_bits);
}

std::uint64_t koopman_parity_checksum(std::span<const std::uint8_t> data,
                                      const AlgorithmSpec& spec) {
    require_family(spec, Family::KoopmanParity);
    require_nonempty(data);
    Modulus mod(spec.modulus);
    std::uint64_t sum =
        koopman_fold(data, mod, spec.block_bytes, spec.seed, spec.check_bits);

    std::uint8_t psum = 0;
    for (std::uint8_t b : data) psum ^= b;
    for (unsigned i = 0; i < spec.block_bytes; ++i)
        psum ^= seed_byte(spec.seed, spec.block_bytes, i);
    for (std::uint64_t v = sum; v; v >>= 8) psum ^= static_cast<std::uint8_t>(v);

    return (sum << 1) | (std::popcount(static_cast<unsigned>(psum)) & 1u);
}

std::uint64_t single_sum_checksum(std::span<const std::uint8_t> data,
                                  const AlgorithmSpec& spec) {
    require_family(spec, Family::SingleSum);
    require_nonempty(data);
    const Modulus mod(spec.modulus);
    const std::uint64_t m = spec.modulus;
    const unsigned bb = spec.block_bytes;
    const std::uint64_t blocks = (data.size() + bb - 1) / bb;

    std::uint64_t sum = spec.seed % m;
    // Fast path when a whole block plus the running sum fits without a
    // full reduction (block value < 2^(8*bb) <= m, so sum + block < 2m).
    if (8 * bb < 64 && (std::uint64_t{1} << (8 * bb)) <= m) {
        for (std::uint64_t i = 0; i < blocks; ++i) {
            std::uint64_t block = 0;
            for (unsigned j = 0; j < bb; ++j) {
                std::uint64_t idx = i * bb + j;
                block = (block << 8) | (idx < data.size() ? data[idx] : 0);
            }
            sum += block;
            if (sum >= m) sum -= m;
        }
        return sum;
    }
    for (std::uint64_t i = 0; i < blocks; ++i) {
        sum += block_residue(data, i * bb, bb, mod);
        if (sum >= m) sum -= m;
    }
    return sum;
}

std::uint64_t dual_sum_checksum(std::span<const std::uint8_t> data,
                                const AlgorithmSpec& spec) {
    require_family(spec, Family::DualSum);
    require_nonempty(data);
    const Modulus mod(spec.modulus);
    const std::uint64_t m = spec.modulus;
    const unsigned bb = spec.block_bytes;
    const std::uint64_t blocks = (data.size() + bb - 1) / bb;

    std::uint64_t sum_a = spec.seed % m;
    std::uint64_t sum_b = spec.seed % m;
    if (bb == 1 && m > 128) {
        // Byte blocks: one conditional subtract per sum.
        for (std::uint64_t i = 0; i < blocks; ++i) {
            std::uint64_t b = data[i];
            if (b >= m) b -= m;
            sum_a += b;
            if (sum_a >= m) sum_a -= m;
            sum_b += sum_a;
            if (sum_b >= m) sum_b -= m;
        }
    } else {
        for (std::uint64_t i = 0; i < blocks; ++i) {
            sum_a += block_residue(data, i * bb, bb, mod);
            if (sum_a >= m) sum_a -= m;
            sum_b += sum_a;
            if (sum_b >= m) sum_b -= m;
        }
    }
    return (sum_a << (spec.check_bits / 2)) | sum_b;
}

std::uint64_t checksum(std::span<const std::uint8_t> data, const AlgorithmSpec& spec) {
    switch (spec.family) {
        case Family::SingleSum: return single_sum_checksum(data, spec);
        case Family::DualSum: return dual_sum_checksum(data, spec);
        case Family::Koopman: return koopman_checksum(data, spec);
        case Family::KoopmanParity: return koopman_parity_checksum(data, spec);
    }
    throw InvalidSpec("unknown family");
}

unsigned parity_bit(std::span<const std::uint8_t> bytes) {
    std::uint8_t fold = 0;
    for (std::uint8_t b : bytes) fold ^= b;
    return std::popcount(static_cast<unsigned>(fold)) & 1u;
}

std::vector<std::uint8_t> encode_check_bytes(std::uint64_t value, unsigned check_bits) {
    unsigned n = (check_bits + 7) / 8;
    std::vector<std::uint8_t> out(n);
    for (unsigned i = 0; i < n; ++i)
        out[i] = static_cast<std::uint8_t>(value >> (8 * (n - 1 - i)));
    return out;
}

CodeWord encode_codeword(std::span<const std::uint8_t> data, const AlgorithmSpec& spec) {
    require_nonempty(data);
    std::uint64_t value = checksum(data, spec);
    return CodeWord{{data.begin(), data.end()},
                    encode_check_bytes(value, spec.check_bits)};
}

std::uint64_t stored_check_value(const CodeWord& cw, const AlgorithmSpec& spec) {
    if (cw.check.size() != spec.check_bytes())
        throw BadCheckLength("check field has " + std::to_string(cw.check.size()) +
                             " bytes, expected " + std::to_string(spec.check_bytes()));
    std::uint64_t value = 0;
    for (std::uint8_t b : cw.check) value = (value << 8) | b;
    return value;
}

bool verify_codeword(const CodeWord& cw, const AlgorithmSpec& spec) {
    if (cw.data.empty()) throw EmptyDataWord();
    std::uint64_t stored = stored_check_value(cw, spec);
    return checksum(cw.data, spec) == stored;
}

}  // namespace modsum
