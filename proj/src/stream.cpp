#include "modsum/stream.hpp"

#include <algorithm>
#include <bit>

#include "modsum/errors.hpp"

namespace modsum {

namespace {

inline std::uint8_t seed_byte(std::uint64_t seed, unsigned block_bytes, unsigned idx) {
    unsigned shift = 8 * (block_bytes - 1 - idx);
    return shift >= 64 ? 0 : static_cast<std::uint8_t>(seed >> shift);
}

}  // namespace

StreamState::StreamState(const AlgorithmSpec& spec)
    : spec_(spec), mod_(spec.modulus) {
    if (spec_.family == Family::SingleSum || spec_.family == Family::DualSum) {
        sum_ = spec_.seed % spec_.modulus;
        sum_b_ = spec_.seed % spec_.modulus;
    } else if (spec_.family == Family::KoopmanParity) {
        for (unsigned i = 0; i < spec_.block_bytes; ++i)
            psum_ ^= seed_byte(spec_.seed, spec_.block_bytes, i);
    }
}

void StreamState::feed(std::uint8_t byte, bool is_pad) {
    switch (spec_.family) {
        case Family::Koopman:
        case Family::KoopmanParity: {
            std::uint8_t b = byte;
            if (fed_bytes_ < spec_.block_bytes)
                b ^= seed_byte(spec_.seed, spec_.block_bytes,
                               static_cast<unsigned>(fed_bytes_));
            sum_ = mod_.reduce((sum_ << 8) + b);
            if (!is_pad && spec_.family == Family::KoopmanParity) psum_ ^= byte;
            break;
        }
        case Family::SingleSum:
        case Family::DualSum: {
            block_acc_ = mod_.reduce((block_acc_ << 8) + byte);
            if (++block_fill_ == spec_.block_bytes) {
                sum_ += block_acc_;
                if (sum_ >= spec_.modulus) sum_ -= spec_.modulus;
                if (spec_.family == Family::DualSum) {
                    sum_b_ += sum_;
                    if (sum_b_ >= spec_.modulus) sum_b_ -= spec_.modulus;
                }
                block_acc_ = 0;
                block_fill_ = 0;
            }
            break;
        }
    }
    ++fed_bytes_;
}

void StreamState::update(std::span<const std::uint8_t> bytes) {
    if (finalized_) throw StateConsumed();
    for (std::uint8_t b : bytes) feed(b, false);
    data_bytes_ += bytes.size();
}

std::uint64_t StreamState::finalize() {
    if (finalized_) throw StateConsumed();
    if (data_bytes_ == 0) throw EmptyDataWord();
    finalized_ = true;

    // Zero-pad the trailing partial block.
    while (fed_bytes_ % spec_.block_bytes != 0) feed(0, true);

    switch (spec_.family) {
        case Family::SingleSum:
            return sum_;
        case Family::DualSum:
            return (sum_ << (spec_.check_bits / 2)) | sum_b_;
        case Family::Koopman:
        case Family::KoopmanParity: {
            const unsigned step_bits = std::min(8u * spec_.block_bytes, 32u);
            unsigned remaining = spec_.check_bits;
            while (remaining) {
                unsigned step = std::min(step_bits, remaining);
                sum_ = mod_.reduce(sum_ << step);
                remaining -= step;
            }
            if (spec_.family == Family::Koopman) return sum_;
            std::uint8_t p = psum_;
            for (std::uint64_t v = sum_; v; v >>= 8)
                p ^= static_cast<std::uint8_t>(v);
            return (sum_ << 1) | (std::popcount(static_cast<unsigned>(p)) & 1u);
        }
    }
    throw InvalidSpec("unknown family");
}

StreamState stream_init(const AlgorithmSpec& spec,
                        std::span<const std::uint8_t> first_block) {
    StreamState state(spec);
    state.update(first_block);
    return state;
}

void stream_update(StreamState& state, std::span<const std::uint8_t> block) {
    state.update(block);
}

std::uint64_t stream_finalize(StreamState& state) { return state.finalize(); }

}  // namespace modsum
