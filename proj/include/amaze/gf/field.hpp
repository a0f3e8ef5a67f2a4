#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "amaze/gf/uint.hpp"

namespace amaze::gf {

/// Raised when a value is not strictly below the field modulus.
class NotCanonical : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct BarrettConstant {
    unsigned n = 0;  // ceil(log2(p - 1))
    U256 z;          // floor(2^(2n) / p)
};

/// n = ceil(log2(p-1)) and z = floor(2^(2n) / p) with exact integer arithmetic.
/// Throws std::invalid_argument for p < 3 or when z would not fit 256 bits.
BarrettConstant derive_barrett_constant(const U256& p);

namespace detail {
struct CanonicalTag {};
}  // namespace detail

/// An integer in [0, p). Only FieldParams (and the arithmetic in this module)
/// constructs one, so canonical form holds relative to the params that made it.
class FieldElement {
public:
    constexpr FieldElement() = default;
    constexpr FieldElement(detail::CanonicalTag, const U256& v) : value_(v) {}

    [[nodiscard]] constexpr const U256& value() const { return value_; }
    [[nodiscard]] constexpr bool is_zero() const { return value_.is_zero(); }

    /// 64 lowercase hex digits, big-endian, zero-padded.
    [[nodiscard]] std::string to_hex() const { return gf::to_hex(value_); }
    [[nodiscard]] std::array<std::uint8_t, 32> to_bytes() const { return to_be_bytes(value_); }

    friend constexpr bool operator==(const FieldElement&, const FieldElement&) = default;
    friend constexpr auto operator<=>(const FieldElement& a, const FieldElement& b) {
        return a.value_ <=> b.value_;
    }

private:
    U256 value_;
};

/// Algebraic configuration of a prime field plus the MiMC exponent and
/// round count: p, n, z, d, r. Immutable after construction.
class FieldParams {
public:
    /// Validates p (p >= 3, p < 2^n, n <= 254) and gcd(d, p-1) = 1, then
    /// derives n, z and r = ceil(log2(p) / log2(d)).
    static FieldParams make(const U256& p, unsigned d);

    /// The BN254 scalar field with d = 7. Checks n = 254, gcd(7, p-1) = 1 and
    /// r = 91 on first use.
    static const FieldParams& bn254();

    [[nodiscard]] const U256& modulus() const { return p_; }
    [[nodiscard]] unsigned bits() const { return n_; }
    [[nodiscard]] const U256& barrett_z() const { return z_; }
    [[nodiscard]] unsigned exponent() const { return d_; }
    [[nodiscard]] unsigned rounds() const { return r_; }

    [[nodiscard]] bool is_canonical(const U256& v) const { return v < p_; }

    /// Throws NotCanonical when v >= p.
    [[nodiscard]] FieldElement element(const U256& v) const;
    [[nodiscard]] FieldElement element(std::uint64_t v) const { return element(U256(v)); }
    /// Accepts an optional 0x prefix. Throws std::invalid_argument on bad hex
    /// and NotCanonical on values >= p.
    [[nodiscard]] FieldElement from_hex(std::string_view hex) const;
    /// Exactly 32 big-endian bytes.
    [[nodiscard]] FieldElement from_bytes(std::span<const std::uint8_t> bytes) const;
    /// v mod p, for any 256-bit v.
    [[nodiscard]] FieldElement reduce(const U256& v) const;

    [[nodiscard]] FieldElement zero() const { return {}; }
    [[nodiscard]] FieldElement one() const { return element(1); }
    [[nodiscard]] FieldElement minus_one() const;

    /// Multi-line diagnostic record with p, n, z, d, r in decimal and hex.
    [[nodiscard]] std::string describe() const;

private:
    FieldParams() = default;

    U256 p_;
    unsigned n_ = 0;
    U256 z_;
    unsigned d_ = 0;
    unsigned r_ = 0;
};

/// Decimal string of the BN254 scalar-field modulus.
inline constexpr std::string_view kBn254ModulusDecimal =
    "21888242871839275222246405745257275088548364400416034343698204186575808495617";

/// ceil(log2(p) / log2(d)), i.e. the least r with d^r >= p.
unsigned mimc_round_count(const U256& p, unsigned d);

FieldElement add_mod(const FieldElement& a, const FieldElement& b, const FieldParams& params);
FieldElement sub_mod(const FieldElement& a, const FieldElement& b, const FieldParams& params);

}  // namespace amaze::gf
