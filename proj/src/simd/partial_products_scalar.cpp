#include "amaze/simd/partial_products.hpp"

namespace amaze::simd::kernels {

void partial_products_scalar(std::span<const std::uint32_t, 4> x_limbs,
                             std::span<const std::uint32_t> chunks,
                             std::span<std::uint64_t> products) {
    for (std::size_t i = 0; i < chunks.size(); ++i) {
        const std::uint64_t c = chunks[i];
        for (std::size_t j = 0; j < 4; ++j) {
            products[4 * i + j] = static_cast<std::uint64_t>(x_limbs[j]) * c;
        }
    }
}

}  // namespace amaze::simd::kernels
