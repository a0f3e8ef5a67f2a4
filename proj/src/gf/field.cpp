#include "amaze/gf/field.hpp"

#include <numeric>
#include <sstream>

namespace amaze::gf {

BarrettConstant derive_barrett_constant(const U256& p) {
    if (p < U256(3)) throw std::invalid_argument("derive_barrett_constant: modulus must be >= 3");
    BarrettConstant out;
    out.n = static_cast<unsigned>((p - U256(2)).bit_length());
    const auto q = divmod(power_of_two<8>(2 * out.n), p.resize<5>()).quotient;
    if (!q.fits<4>()) throw std::invalid_argument("derive_barrett_constant: z exceeds 256 bits");
    out.z = q.resize<4>();
    return out;
}

unsigned mimc_round_count(const U256& p, unsigned d) {
    if (d < 2) throw std::invalid_argument("mimc_round_count: exponent must be >= 2");
    const UInt<5> target = p.resize<5>();
    UInt<5> power(1);
    unsigned r = 0;
    while (power < target) {
        power = mul_small(power, d);
        ++r;
    }
    return r;
}

FieldParams FieldParams::make(const U256& p, unsigned d) {
    const BarrettConstant bc = derive_barrett_constant(p);
    if (bc.n > 254) throw std::invalid_argument("FieldParams: modulus wider than 254 bits");
    if (!(p < power_of_two<4>(bc.n))) {
        // p = 2^n + 1: the n-iteration peasant loop and the Barrett window
        // both assume p < 2^n.
        throw std::invalid_argument("FieldParams: modulus must be below 2^n");
    }
    if (d < 2) throw std::invalid_argument("FieldParams: exponent must be >= 2");
    const std::uint64_t rem = mod_small(p - U256(1), d);
    if (std::gcd<std::uint64_t, std::uint64_t>(d, rem) != 1) {
        throw std::invalid_argument("FieldParams: gcd(d, p-1) != 1, x^d is not a permutation");
    }
    FieldParams fp;
    fp.p_ = p;
    fp.n_ = bc.n;
    fp.z_ = bc.z;
    fp.d_ = d;
    fp.r_ = mimc_round_count(p, d);
    return fp;
}

const FieldParams& FieldParams::bn254() {
    static const FieldParams params = [] {
        const auto p = parse_decimal<4>(kBn254ModulusDecimal);
        FieldParams fp = make(*p, 7);
        if (fp.bits() != 254) throw std::logic_error("BN254: expected n = 254");
        if (fp.rounds() != 91) throw std::logic_error("BN254: expected r = 91");
        return fp;
    }();
    return params;
}

FieldElement FieldParams::element(const U256& v) const {
    if (!is_canonical(v)) throw NotCanonical("value " + gf::to_hex(v) + " is not canonical (>= p)");
    return {detail::CanonicalTag{}, v};
}

FieldElement FieldParams::from_hex(std::string_view hex) const {
    const auto v = parse_hex<4>(hex);
    if (!v) throw std::invalid_argument("malformed hex: '" + std::string(hex) + "'");
    return element(*v);
}

FieldElement FieldParams::from_bytes(std::span<const std::uint8_t> bytes) const {
    if (bytes.size() != 32) throw std::invalid_argument("field element encoding must be 32 bytes");
    return element(*from_be_bytes<4>(bytes));
}

FieldElement FieldParams::reduce(const U256& v) const {
    return {detail::CanonicalTag{}, mod(v, p_.resize<5>()).resize<4>()};
}

FieldElement FieldParams::minus_one() const { return {detail::CanonicalTag{}, p_ - U256(1)}; }

std::string FieldParams::describe() const {
    std::ostringstream os;
    os << "p = " << to_decimal(p_) << "\n"
       << "    0x" << gf::to_hex(p_) << "\n"
       << "n = " << n_ << "\n"
       << "z = " << to_decimal(z_) << "\n"
       << "    0x" << gf::to_hex(z_) << "\n"
       << "d = " << d_ << "\n"
       << "r = " << r_ << "\n";
    return os.str();
}

FieldElement add_mod(const FieldElement& a, const FieldElement& b, const FieldParams& params) {
    // a + b < 2p < 2^255, so the 256-bit sum never carries out.
    U256 s = a.value() + b.value();
    if (s >= params.modulus()) sub_in_place(s, params.modulus());
    return {detail::CanonicalTag{}, s};
}

FieldElement sub_mod(const FieldElement& a, const FieldElement& b, const FieldParams& params) {
    U256 d = a.value();
    if (sub_in_place(d, b.value())) add_in_place(d, params.modulus());
    return {detail::CanonicalTag{}, d};
}

}  // namespace amaze::gf
