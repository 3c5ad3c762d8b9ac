#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace modsum {

enum class Family { SingleSum, DualSum, Koopman, KoopmanParity };

std::string_view family_name(Family f);
std::optional<Family> family_from_name(std::string_view name);

// One checksum algorithm: kernel family, modulus, check width in bits,
// bytes consumed per kernel iteration, and the initial seed.
//
// For KoopmanParity the modulus occupies check_bits-1 bits and bit 0 of the
// check value is a parity bit.
struct AlgorithmSpec {
    Family family = Family::SingleSum;
    std::uint64_t modulus = 0;
    unsigned check_bits = 0;
    unsigned block_bytes = 1;
    std::uint64_t seed = 0;

    // Validates all field constraints; throws InvalidSpec.
    static AlgorithmSpec make(Family family, std::uint64_t modulus,
                              unsigned check_bits, unsigned block_bytes = 1,
                              std::uint64_t seed = 0);

    unsigned check_bytes() const { return (check_bits + 7) / 8; }
    std::uint64_t check_mask() const { return (std::uint64_t{1} << check_bits) - 1; }

    bool operator==(const AlgorithmSpec&) const = default;
};

struct Preset {
    std::string_view name;
    AlgorithmSpec spec;
};

// The built-in algorithm configurations exposed by the CLI.
std::span<const Preset> presets();
std::optional<AlgorithmSpec> preset_spec(std::string_view name);

// Preset name when the spec matches one, otherwise a synthesized label
// like "koopman_m253_k8_b1".
std::string spec_label(const AlgorithmSpec& spec);

}  // namespace modsum
