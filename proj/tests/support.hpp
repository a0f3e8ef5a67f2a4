#pragma once

#include <cstdint>
#include <random>

#include <boost/multiprecision/cpp_int.hpp>

#include "amaze/gf/field.hpp"

namespace amaze::test {

using boost::multiprecision::cpp_int;
using gf::FieldElement;
using gf::FieldParams;
using gf::U256;
using gf::U512;

template <std::size_t N>
cpp_int big(const gf::UInt<N>& v) {
    cpp_int out = 0;
    for (std::size_t i = N; i-- > 0;) out = (out << 64) | cpp_int(v.limb[i]);
    return out;
}

inline cpp_int big(const FieldElement& v) { return big(v.value()); }

template <std::size_t N>
gf::UInt<N> from_big(cpp_int v) {
    gf::UInt<N> out;
    for (std::size_t i = 0; i < N; ++i) {
        out.limb[i] = static_cast<std::uint64_t>(v & cpp_int(~std::uint64_t{0}));
        v >>= 64;
    }
    return out;
}

inline const cpp_int& bn254_p() {
    static const cpp_int p(std::string(gf::kBn254ModulusDecimal));
    return p;
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : g_(seed) {}

    std::uint64_t next() { return g_(); }

    U256 bits(unsigned n) {
        U256 v;
        for (auto& l : v.limb) l = g_();
        return gf::low_bits(v, n);
    }

    // Random bit length first, so small and sparse operands show up too.
    U256 skewed(unsigned max_bits) {
        const unsigned n = static_cast<unsigned>(g_() % (max_bits + 1));
        return bits(n);
    }

    FieldElement element(const FieldParams& params) {
        const unsigned n = static_cast<unsigned>(params.modulus().bit_length());
        for (;;) {
            const U256 v = bits(n);
            if (params.is_canonical(v)) return params.element(v);
        }
    }

private:
    std::mt19937_64 g_;
};

}  // namespace amaze::test
