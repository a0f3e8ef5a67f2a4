#include <arm_neon.h>

#include "amaze/simd/partial_products.hpp"

namespace amaze::simd::kernels {

void partial_products_neon(std::span<const std::uint32_t, 4> x_limbs,
                           std::span<const std::uint32_t> chunks,
                           std::span<std::uint64_t> products) {
    const uint32x4_t x = vld1q_u32(x_limbs.data());
    const uint32x2_t lo = vget_low_u32(x);
    const uint32x2_t hi = vget_high_u32(x);
    for (std::size_t i = 0; i < chunks.size(); ++i) {
        const uint32x2_t c = vdup_n_u32(chunks[i]);
        vst1q_u64(products.data() + 4 * i, vmull_u32(lo, c));
        vst1q_u64(products.data() + 4 * i + 2, vmull_u32(hi, c));
    }
}

}  // namespace amaze::simd::kernels
