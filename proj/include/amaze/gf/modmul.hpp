#pragma once

#include <concepts>
#include <optional>
#include <string_view>

#include "amaze/gf/chunked.hpp"
#include "amaze/gf/field.hpp"

namespace amaze::gf {

/// Schoolbook product followed by a bit-serial long-division remainder.
/// Reference for the two datapath-shaped multipliers.
FieldElement mul_mod_naive(const FieldElement& a, const FieldElement& b, const FieldParams& params);

struct PeasantStats {
    unsigned iterations = 0;
};

/// Bit-serial shift-and-add: exactly params.bits() iterations of
/// conditional add, reduce, double-and-reduce, halve.
FieldElement mul_mod_peasant(const FieldElement& a, const FieldElement& b, const FieldParams& params,
                             PeasantStats* stats = nullptr);

/// Intermediates of one Barrett reduction.
struct BarrettTrace {
    U512 w;          // a * b
    U512 t;          // (w >> (n-1)) * z
    U512 u;          // (t >> (n+1)) * p
    U256 candidate;  // (w mod 2^(n+1)) - (u mod 2^(n+1)), wrapped mod 2^(n+1)
    unsigned corrections = 0;
};

/// Barrett reduction whose three integer products run through the chunked
/// multiplier with the given chunk width.
FieldElement mul_mod_barrett(const FieldElement& a, const FieldElement& b, const FieldParams& params,
                             unsigned chunk_bits = kDefaultChunkBits, BarrettTrace* trace = nullptr);

/// Same reduction with plain schoolbook integer products (the synthesized
/// `x*y` multiplier of the unoptimized designs).
FieldElement mul_mod_barrett_flat(const FieldElement& a, const FieldElement& b, const FieldParams& params,
                                  BarrettTrace* trace = nullptr);

enum class MulBackend { naive, peasant, barrett };

std::string_view backend_name(MulBackend backend);
std::optional<MulBackend> parse_backend(std::string_view name);

FieldElement mul_mod(const FieldElement& a, const FieldElement& b, const FieldParams& params,
                     MulBackend backend);

/// A modular multiplier with its field already bound.
template <typename M>
concept ModMultiplier = requires(const M& m, const FieldElement& a) {
    { m(a, a) } -> std::convertible_to<FieldElement>;
};

/// Binds a back end and field into a ModMultiplier.
class Multiplier {
public:
    Multiplier(const FieldParams& params, MulBackend backend) : params_(&params), backend_(backend) {}

    FieldElement operator()(const FieldElement& a, const FieldElement& b) const {
        return mul_mod(a, b, *params_, backend_);
    }

    [[nodiscard]] MulBackend backend() const { return backend_; }
    [[nodiscard]] const FieldParams& params() const { return *params_; }

private:
    const FieldParams* params_;
    MulBackend backend_;
};

/// x^7 on one multiplier: x^2, x^4, x^6, x^7.
template <ModMultiplier M>
FieldElement pow7_chain4(const FieldElement& x, const M& mul) {
    const FieldElement t1 = mul(x, x);
    const FieldElement t2 = mul(t1, t1);
    const FieldElement t3 = mul(t2, t1);
    return mul(t3, x);
}

/// x^7 with two multipliers: x^2, then {x^4, x^3} side by side, then x^7.
template <ModMultiplier M>
FieldElement pow7_chain3(const FieldElement& x, const M& mul) {
    const FieldElement t1 = mul(x, x);
    const FieldElement t2 = mul(t1, t1);
    const FieldElement t3 = mul(t1, x);
    return mul(t2, t3);
}

/// Left-to-right square-and-multiply for exponents other than 7.
template <ModMultiplier M>
FieldElement pow_small(const FieldElement& x, unsigned exponent, const M& mul, const FieldElement& one) {
    if (exponent == 0) return one;
    int bit = 31;
    while (((exponent >> bit) & 1u) == 0) --bit;
    FieldElement acc = x;
    while (bit-- > 0) {
        acc = mul(acc, acc);
        if ((exponent >> bit) & 1u) acc = mul(acc, x);
    }
    return acc;
}

FieldElement pow7_chain4(const FieldElement& x, MulBackend backend, const FieldParams& params);
FieldElement pow7_chain3(const FieldElement& x, MulBackend backend, const FieldParams& params);

}  // namespace amaze::gf
