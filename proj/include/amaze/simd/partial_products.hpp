#pragma once

// Partial-product kernels for the chunked multiplier.
//
// Each kernel multiplies a 128-bit half operand, given as four 32-bit limbs,
// by every chunk of the other operand:
//
//     products[4*i + j] = x_limbs[j] * chunks[i]
//
// The columns are left unnormalized; with chunks below 2^32 every entry fits
// 64 bits. The scalar kernel is the reference; vector kernels must match it
// bit for bit.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace amaze::simd {

enum class Level { scalar, avx2, neon };

std::string_view level_name(Level level);

/// Whether the kernel for this level was compiled in and the CPU runs it.
bool level_supported(Level level);

/// Best supported level, unless AMAZE_SIMD names a supported one.
Level detect_level();

/// Level used by partial_products(). Defaults to detect_level().
Level active_level();

/// Throws std::invalid_argument if the level is unsupported here.
void set_active_level(Level level);

using PartialProductsFn = void (*)(std::span<const std::uint32_t, 4> x_limbs,
                                   std::span<const std::uint32_t> chunks,
                                   std::span<std::uint64_t> products);

/// Kernel for a specific level; nullptr when not compiled in.
PartialProductsFn kernel_for(Level level);

/// Dispatches to the active level. products.size() must be 4 * chunks.size().
void partial_products(std::span<const std::uint32_t, 4> x_limbs,
                      std::span<const std::uint32_t> chunks,
                      std::span<std::uint64_t> products);

namespace kernels {
void partial_products_scalar(std::span<const std::uint32_t, 4> x_limbs,
                             std::span<const std::uint32_t> chunks,
                             std::span<std::uint64_t> products);
#if defined(AMAZE_HAVE_AVX2)
void partial_products_avx2(std::span<const std::uint32_t, 4> x_limbs,
                           std::span<const std::uint32_t> chunks,
                           std::span<std::uint64_t> products);
#endif
#if defined(AMAZE_HAVE_NEON)
void partial_products_neon(std::span<const std::uint32_t, 4> x_limbs,
                           std::span<const std::uint32_t> chunks,
                           std::span<std::uint64_t> products);
#endif
}  // namespace kernels

}  // namespace amaze::simd
