// Compiled with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include "amaze/simd/partial_products.hpp"

namespace amaze::simd::kernels {

void partial_products_avx2(std::span<const std::uint32_t, 4> x_limbs,
                           std::span<const std::uint32_t> chunks,
                           std::span<std::uint64_t> products) {
    // One 64-bit lane per limb; _mm256_mul_epu32 multiplies the low 32 bits.
    const __m256i x = _mm256_cvtepu32_epi64(
        _mm_loadu_si128(reinterpret_cast<const __m128i*>(x_limbs.data())));
    auto* out = reinterpret_cast<__m256i*>(products.data());

    std::size_t i = 0;
    for (; i + 2 <= chunks.size(); i += 2) {
        const __m256i c0 = _mm256_set1_epi64x(chunks[i]);
        const __m256i c1 = _mm256_set1_epi64x(chunks[i + 1]);
        _mm256_storeu_si256(out + i, _mm256_mul_epu32(x, c0));
        _mm256_storeu_si256(out + i + 1, _mm256_mul_epu32(x, c1));
    }
    for (; i < chunks.size(); ++i) {
        _mm256_storeu_si256(out + i, _mm256_mul_epu32(x, _mm256_set1_epi64x(chunks[i])));
    }
}

}  // namespace amaze::simd::kernels
