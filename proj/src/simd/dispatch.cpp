#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "amaze/simd/partial_products.hpp"

namespace amaze::simd {

namespace {

std::atomic<int>& active_slot() {
    static std::atomic<int> slot{static_cast<int>(detect_level())};
    return slot;
}

}  // namespace

std::string_view level_name(Level level) {
    switch (level) {
        case Level::scalar: return "scalar";
        case Level::avx2: return "avx2";
        case Level::neon: return "neon";
    }
    return "unknown";
}

bool level_supported(Level level) {
    switch (level) {
        case Level::scalar: return true;
        case Level::avx2:
#if defined(AMAZE_HAVE_AVX2)
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
        case Level::neon:
#if defined(AMAZE_HAVE_NEON)
            return true;
#else
            return false;
#endif
    }
    return false;
}

Level detect_level() {
    if (const char* env = std::getenv("AMAZE_SIMD")) {
        for (Level l : {Level::scalar, Level::avx2, Level::neon}) {
            if (level_name(l) == env && level_supported(l)) return l;
        }
    }
    if (level_supported(Level::avx2)) return Level::avx2;
    if (level_supported(Level::neon)) return Level::neon;
    return Level::scalar;
}

Level active_level() { return static_cast<Level>(active_slot().load(std::memory_order_relaxed)); }

void set_active_level(Level level) {
    if (!level_supported(level)) {
        throw std::invalid_argument("SIMD level " + std::string(level_name(level)) + " not supported");
    }
    active_slot().store(static_cast<int>(level), std::memory_order_relaxed);
}

PartialProductsFn kernel_for(Level level) {
    switch (level) {
        case Level::scalar: return &kernels::partial_products_scalar;
        case Level::avx2:
#if defined(AMAZE_HAVE_AVX2)
            return &kernels::partial_products_avx2;
#else
            return nullptr;
#endif
        case Level::neon:
#if defined(AMAZE_HAVE_NEON)
            return &kernels::partial_products_neon;
#else
            return nullptr;
#endif
    }
    return nullptr;
}

void partial_products(std::span<const std::uint32_t, 4> x_limbs,
                      std::span<const std::uint32_t> chunks,
                      std::span<std::uint64_t> products) {
    if (products.size() != 4 * chunks.size()) {
        throw std::invalid_argument("partial_products: output must hold 4 columns per chunk");
    }
    switch (active_level()) {
#if defined(AMAZE_HAVE_AVX2)
        case Level::avx2: kernels::partial_products_avx2(x_limbs, chunks, products); return;
#endif
#if defined(AMAZE_HAVE_NEON)
        case Level::neon: kernels::partial_products_neon(x_limbs, chunks, products); return;
#endif
        default: kernels::partial_products_scalar(x_limbs, chunks, products); return;
    }
}

}  // namespace amaze::simd
