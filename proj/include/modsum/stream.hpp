#pragma once

#include <cstdint>
#include <span>

#include "modsum/modmath.hpp"
#include "modsum/spec.hpp"

namespace modsum {

// Incremental checksum computation. Bytes may arrive in chunks of any size;
// finalize() pads the last partial block, runs the family-specific cleanup
// and returns the check value. One finalize per state; any call after that
// throws StateConsumed.
class StreamState {
public:
    explicit StreamState(const AlgorithmSpec& spec);

    void update(std::span<const std::uint8_t> bytes);
    std::uint64_t finalize();

    std::uint64_t bytes_seen() const { return data_bytes_; }
    const AlgorithmSpec& spec() const { return spec_; }

private:
    void feed(std::uint8_t byte, bool is_pad);

    AlgorithmSpec spec_;
    Modulus mod_;
    std::uint64_t sum_ = 0;
    std::uint64_t sum_b_ = 0;
    std::uint64_t block_acc_ = 0;   // partial block residue (single/dual)
    unsigned block_fill_ = 0;
    std::uint8_t psum_ = 0;         // XOR of data bytes, seed folded at init
    std::uint64_t data_bytes_ = 0;
    std::uint64_t fed_bytes_ = 0;
    bool finalized_ = false;
};

// Convenience wrappers matching the init/update/finalize call shape.
StreamState stream_init(const AlgorithmSpec& spec,
                        std::span<const std::uint8_t> first_block);
void stream_update(StreamState& state, std::span<const std::uint8_t> block);
std::uint64_t stream_finalize(StreamState& state);

}  // namespace modsum
