#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "modsum/spec.hpp"

namespace modsum {

// A data word with its appended check value. Check bytes are big-endian;
// when check_bits is not a byte multiple the pad bits in the leading byte
// are zero.
struct CodeWord {
    std::vector<std::uint8_t> data;
    std::vector<std::uint8_t> check;

    bool operator==(const CodeWord&) const = default;
};

// Check value for any family; dispatches on spec.family.
std::uint64_t checksum(std::span<const std::uint8_t> data, const AlgorithmSpec& spec);

// Shift-left-by-block, add, reduce kernel. Equals (V * 2^k) mod M where V is
// the data word read as one big-endian integer (seed XORed into the first
// block, final partial block zero-padded on the right).
std::uint64_t koopman_checksum(std::span<const std::uint8_t> data, const AlgorithmSpec& spec);

// (k-1)-bit Koopman sum packed above a parity bit covering the data bytes,
// the seed and the sum value itself.
std::uint64_t koopman_parity_checksum(std::span<const std::uint8_t> data, const AlgorithmSpec& spec);

// Running sum of big-endian block values mod M, starting from the seed.
std::uint64_t single_sum_checksum(std::span<const std::uint8_t> data, const AlgorithmSpec& spec);

// Fletcher-style pair of running sums; SumA occupies the high k/2 bits.
std::uint64_t dual_sum_checksum(std::span<const std::uint8_t> data, const AlgorithmSpec& spec);

// XOR-fold of all bytes, then XOR-fold of the bits of that byte.
unsigned parity_bit(std::span<const std::uint8_t> bytes);

// Big-endian serialization of a check value into ceil(check_bits/8) bytes.
std::vector<std::uint8_t> encode_check_bytes(std::uint64_t value, unsigned check_bits);

CodeWord encode_codeword(std::span<const std::uint8_t> data, const AlgorithmSpec& spec);

// The check field of cw read as an unsigned integer; throws BadCheckLength
// when its size does not match the spec.
std::uint64_t stored_check_value(const CodeWord& cw, const AlgorithmSpec& spec);

// True iff the recomputed check value equals the stored one.
bool verify_codeword(const CodeWord& cw, const AlgorithmSpec& spec);

}  // namespace modsum
