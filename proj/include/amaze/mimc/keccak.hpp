#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace amaze::mimc {

using Digest256 = std::array<std::uint8_t, 32>;

/// Original Keccak-256 (0x01 domain padding, as used by Ethereum), not the
/// FIPS 202 SHA3-256 variant.
Digest256 keccak256(std::span<const std::uint8_t> data);

}  // namespace amaze::mimc
