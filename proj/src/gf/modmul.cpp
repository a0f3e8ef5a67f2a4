#include "amaze/gf/modmul.hpp"

#include <algorithm>
#include <cctype>

namespace amaze::gf {

namespace {

FieldElement canonical(const U256& v) { return {detail::CanonicalTag{}, v}; }

template <typename IntMul>
FieldElement barrett(const FieldElement& a, const FieldElement& b, const FieldParams& params,
                     IntMul&& int_mul, BarrettTrace* trace) {
    const unsigned n = params.bits();
    const U256& p = params.modulus();

    const U512 w = int_mul(a.value(), b.value());
    // w < p^2 < 2^(2n), so w >> (n-1) < 2^(n+1); z < 2^(n+1) as well.
    const U512 t = int_mul((w >> (n - 1)).resize<4>(), params.barrett_z());
    const U512 u = int_mul((t >> (n + 1)).resize<4>(), p);

    // Both operands live in (n+1)-bit registers; the difference wraps.
    U256 y = low_bits(w, n + 1).resize<4>();
    sub_in_place(y, low_bits(u, n + 1).resize<4>());
    y = low_bits(y, n + 1);
    const U256 candidate = y;

    unsigned corrections = 0;
    for (int step = 0; step < 2; ++step) {
        if (y >= p) {
            sub_in_place(y, p);
            ++corrections;
        }
    }
    if (trace) *trace = {w, t, u, candidate, corrections};
    return canonical(y);
}

}  // namespace

FieldElement mul_mod_naive(const FieldElement& a, const FieldElement& b, const FieldParams& params) {
    const U512 product = mul_full(a.value(), b.value());
    return canonical(mod(product, params.modulus()));
}

FieldElement mul_mod_peasant(const FieldElement& a, const FieldElement& b, const FieldParams& params,
                             PeasantStats* stats) {
    const U256& p = params.modulus();
    U256 y;
    U256 x1 = a.value();
    U256 x2 = b.value();
    unsigned iterations = 0;
    for (unsigned i = 0; i < params.bits(); ++i) {
        const U256 t = (x2.limb[0] & 1u) ? x1 : U256{};
        add_in_place(y, t);
        if (y >= p) sub_in_place(y, p);
        const U256 u = x1 << 1;
        x1 = u;
        if (u >= p) sub_in_place(x1, p);
        x2 = x2 >> 1;
        ++iterations;
    }
    if (stats) stats->iterations = iterations;
    return canonical(y);
}

FieldElement mul_mod_barrett(const FieldElement& a, const FieldElement& b, const FieldParams& params,
                             unsigned chunk_bits, BarrettTrace* trace) {
    return barrett(
        a, b, params, [chunk_bits](const U256& x, const U256& y) { return mul_wide_chunked(x, y, chunk_bits); },
        trace);
}

FieldElement mul_mod_barrett_flat(const FieldElement& a, const FieldElement& b, const FieldParams& params,
                                  BarrettTrace* trace) {
    return barrett(
        a, b, params, [](const U256& x, const U256& y) { return mul_full(x, y); }, trace);
}

std::string_view backend_name(MulBackend backend) {
    switch (backend) {
        case MulBackend::naive: return "naive";
        case MulBackend::peasant: return "peasant";
        case MulBackend::barrett: return "barrett";
    }
    return "unknown";
}

std::optional<MulBackend> parse_backend(std::string_view name) {
    for (MulBackend b : {MulBackend::naive, MulBackend::peasant, MulBackend::barrett}) {
        const auto want = backend_name(b);
        if (std::equal(want.begin(), want.end(), name.begin(), name.end(),
                       [](char x, char y) { return x == std::tolower(static_cast<unsigned char>(y)); })) {
            return b;
        }
    }
    return std::nullopt;
}

FieldElement mul_mod(const FieldElement& a, const FieldElement& b, const FieldParams& params,
                     MulBackend backend) {
    switch (backend) {
        case MulBackend::naive: return mul_mod_naive(a, b, params);
        case MulBackend::peasant: return mul_mod_peasant(a, b, params);
        case MulBackend::barrett: return mul_mod_barrett(a, b, params);
    }
    return mul_mod_naive(a, b, params);
}

FieldElement pow7_chain4(const FieldElement& x, MulBackend backend, const FieldParams& params) {
    return pow7_chain4(x, Multiplier(params, backend));
}

FieldElement pow7_chain3(const FieldElement& x, MulBackend backend, const FieldParams& params) {
    return pow7_chain3(x, Multiplier(params, backend));
}

}  // namespace amaze::gf
