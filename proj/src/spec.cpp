#include "modsum/spec.hpp"

#include <array>

#include "modsum/errors.hpp"

namespace modsum {

std::string_view family_name(Family f) {
    switch (f) {
        case Family::SingleSum: return "singlesum";
        case Family::DualSum: return "dualsum";
        case Family::Koopman: return "koopman";
        case Family::KoopmanParity: return "koopmanparity";
    }
    return "?";
}

std::optional<Family> family_from_name(std::string_view name) {
    if (name == "singlesum") return Family::SingleSum;
    if (name == "dualsum") return Family::DualSum;
    if (name == "koopman") return Family::Koopman;
    if (name == "koopmanparity") return Family::KoopmanParity;
    return std::nullopt;
}

AlgorithmSpec AlgorithmSpec::make(Family family, std::uint64_t modulus,
                                  unsigned check_bits, unsigned block_bytes,
                                  std::uint64_t seed) {
    if (check_bits < 4 || check_bits > 32)
        throw InvalidSpec("check_bits must be in [4, 32]");
    if (modulus < 2) throw InvalidSpec("modulus must be >= 2");
    if (modulus > (std::uint64_t{1} << 62)) throw InvalidSpec("modulus too large");
    if (block_bytes < 1) throw InvalidSpec("block_bytes must be >= 1");

    const std::uint64_t full = std::uint64_t{1} << check_bits;
    switch (family) {
        case Family::SingleSum:
            if (modulus > full) throw InvalidSpec("modulus exceeds 2^check_bits");
            break;
        case Family::DualSum:
            if (check_bits % 2) throw InvalidSpec("dual-sum check_bits must be even");
            if (modulus > (std::uint64_t{1} << (check_bits / 2)))
                throw InvalidSpec("dual-sum modulus exceeds 2^(check_bits/2)");
            break;
        case Family::Koopman:
            if (modulus > full) throw InvalidSpec("modulus exceeds 2^check_bits");
            if (modulus % 2 == 0)
                throw InvalidSpec("koopman modulus must be odd (even moduli pass the low bit through)");
            break;
        case Family::KoopmanParity:
            if (modulus > (full >> 1))
                throw InvalidSpec("modulus exceeds 2^(check_bits-1)");
            if (modulus % 2 == 0)
                throw InvalidSpec("koopman modulus must be odd (even moduli pass the low bit through)");
            break;
    }

    if (seed >= full) throw InvalidSpec("seed must be < 2^check_bits");
    if ((family == Family::Koopman || family == Family::KoopmanParity) &&
        8 * block_bytes < 64 && seed >= (std::uint64_t{1} << (8 * block_bytes)))
        throw InvalidSpec("koopman seed must fit in one block");

    return AlgorithmSpec{family, modulus, check_bits, block_bytes, seed};
}

namespace {

const std::array<Preset, 12> kPresets = {{
    {"koopman8", {Family::Koopman, 253, 8, 1, 0}},
    {"koopman8-239", {Family::Koopman, 239, 8, 1, 0}},
    {"koopman16", {Family::Koopman, 65519, 16, 1, 0}},
    {"koopman32", {Family::Koopman, 4294967291ull, 32, 1, 0}},
    {"koopman8p", {Family::KoopmanParity, 125, 8, 1, 0}},
    {"koopman16p", {Family::KoopmanParity, 32749, 16, 1, 0}},
    {"koopman32p", {Family::KoopmanParity, 2147483629ull, 32, 1, 0}},
    {"fletcher16", {Family::DualSum, 255, 16, 1, 0}},
    {"adler-style16", {Family::DualSum, 251, 16, 1, 0}},
    {"d253_b4", {Family::DualSum, 253, 16, 4, 0}},
    {"d239_b14", {Family::DualSum, 239, 16, 14, 0}},
    {"add65525_b4", {Family::SingleSum, 65525, 16, 4, 0}},
}};

}  // namespace

std::span<const Preset> presets() { return kPresets; }

std::optional<AlgorithmSpec> preset_spec(std::string_view name) {
    for (const auto& p : kPresets)
        if (p.name == name) return p.spec;
    return std::nullopt;
}

std::string spec_label(const AlgorithmSpec& spec) {
    for (const auto& p : kPresets)
        if (p.spec == spec) return std::string(p.name);
    std::string label(family_name(spec.family));
    label += "_m" + std::to_string(spec.modulus);
    label += "_k" + std::to_string(spec.check_bits);
    label += "_b" + std::to_string(spec.block_bytes);
    if (spec.seed) label += "_s" + std::to_string(spec.seed);
    return label;
}

}  // namespace modsum
