#pragma once

// Fixed-width unsigned integers over little-endian 64-bit limbs.
//
// UInt<N> is a plain value type: arithmetic wraps modulo 2^(64*N) unless a
// function says otherwise. Widening products and exact divisions are free
// functions so the result width is always visible at the call site.

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace amaze::gf {

template <std::size_t N>
struct UInt {
    static_assert(N > 0);
    static constexpr std::size_t kLimbs = N;
    static constexpr std::size_t kBits = 64 * N;

    std::array<std::uint64_t, N> limb{};

    constexpr UInt() = default;
    constexpr explicit UInt(std::uint64_t v) { limb[0] = v; }

    [[nodiscard]] constexpr bool is_zero() const {
        for (auto l : limb) {
            if (l != 0) return false;
        }
        return true;
    }

    [[nodiscard]] constexpr bool bit(std::size_t i) const {
        if (i >= kBits) return false;
        return (limb[i / 64] >> (i % 64)) & 1u;
    }

    constexpr void set_bit(std::size_t i) {
        if (i < kBits) limb[i / 64] |= std::uint64_t{1} << (i % 64);
    }

    [[nodiscard]] constexpr std::size_t bit_length() const {
        for (std::size_t i = N; i-- > 0;) {
            if (limb[i] != 0) return 64 * i + (64 - std::countl_zero(limb[i]));
        }
        return 0;
    }

    // Bits [lo, lo+count) as an integer, count <= 64.
    [[nodiscard]] constexpr std::uint64_t bits(std::size_t lo, std::size_t count) const {
        if (count == 0 || lo >= kBits) return 0;
        const std::size_t w = lo / 64;
        const std::size_t s = lo % 64;
        std::uint64_t v = limb[w] >> s;
        if (s != 0 && w + 1 < N) v |= limb[w + 1] << (64 - s);
        if (count < 64) v &= (std::uint64_t{1} << count) - 1;
        return v;
    }

    template <std::size_t M>
    [[nodiscard]] constexpr UInt<M> resize() const {
        UInt<M> out;
        for (std::size_t i = 0; i < (M < N ? M : N); ++i) out.limb[i] = limb[i];
        return out;
    }

    // True when the value fits in M limbs without truncation.
    template <std::size_t M>
    [[nodiscard]] constexpr bool fits() const {
        for (std::size_t i = M; i < N; ++i) {
            if (limb[i] != 0) return false;
        }
        return true;
    }

    friend constexpr bool operator==(const UInt&, const UInt&) = default;

    friend constexpr std::strong_ordering operator<=>(const UInt& a, const UInt& b) {
        for (std::size_t i = N; i-- > 0;) {
            if (a.limb[i] != b.limb[i]) return a.limb[i] <=> b.limb[i];
        }
        return std::strong_ordering::equal;
    }
};

using U256 = UInt<4>;
using U512 = UInt<8>;

// a += b, returns carry out.
template <std::size_t N>
constexpr bool add_in_place(UInt<N>& a, const UInt<N>& b) {
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < N; ++i) {
        const std::uint64_t s = a.limb[i] + carry;
        const std::uint64_t c1 = s < carry;
        a.limb[i] = s + b.limb[i];
        carry = c1 + (a.limb[i] < b.limb[i]);
    }
    return carry != 0;
}

// a -= b, returns borrow out.
template <std::size_t N>
constexpr bool sub_in_place(UInt<N>& a, const UInt<N>& b) {
    std::uint64_t borrow = 0;
    for (std::size_t i = 0; i < N; ++i) {
        const std::uint64_t bi = b.limb[i] + borrow;
        const std::uint64_t b1 = bi < borrow;
        const std::uint64_t ai = a.limb[i];
        a.limb[i] = ai - bi;
        borrow = b1 + (ai < bi);
    }
    return borrow != 0;
}

template <std::size_t N>
constexpr UInt<N> operator+(UInt<N> a, const UInt<N>& b) {
    add_in_place(a, b);
    return a;
}

template <std::size_t N>
constexpr UInt<N> operator-(UInt<N> a, const UInt<N>& b) {
    sub_in_place(a, b);
    return a;
}

template <std::size_t N>
constexpr UInt<N> operator<<(const UInt<N>& a, std::size_t shift) {
    UInt<N> out;
    if (shift >= UInt<N>::kBits) return out;
    const std::size_t w = shift / 64;
    const std::size_t s = shift % 64;
    for (std::size_t i = N; i-- > w;) {
        std::uint64_t v = a.limb[i - w] << s;
        if (s != 0 && i - w > 0) v |= a.limb[i - w - 1] >> (64 - s);
        out.limb[i] = v;
    }
    return out;
}

template <std::size_t N>
constexpr UInt<N> operator>>(const UInt<N>& a, std::size_t shift) {
    UInt<N> out;
    if (shift >= UInt<N>::kBits) return out;
    const std::size_t w = shift / 64;
    const std::size_t s = shift % 64;
    for (std::size_t i = 0; i + w < N; ++i) {
        std::uint64_t v = a.limb[i + w] >> s;
        if (s != 0 && i + w + 1 < N) v |= a.limb[i + w + 1] << (64 - s);
        out.limb[i] = v;
    }
    return out;
}

// a mod 2^bits.
template <std::size_t N>
constexpr UInt<N> low_bits(const UInt<N>& a, std::size_t bits) {
    if (bits >= UInt<N>::kBits) return a;
    UInt<N> out = a;
    const std::size_t w = bits / 64;
    const std::size_t s = bits % 64;
    out.limb[w] &= s == 0 ? 0 : (std::uint64_t{1} << s) - 1;
    for (std::size_t i = w + 1; i < N; ++i) out.limb[i] = 0;
    return out;
}

template <std::size_t N>
constexpr UInt<N> power_of_two(std::size_t exponent) {
    UInt<N> out;
    out.set_bit(exponent);
    return out;
}

// Schoolbook product, exact.
template <std::size_t M, std::size_t N>
constexpr UInt<M + N> mul_full(const UInt<M>& a, const UInt<N>& b) {
    UInt<M + N> out;
    for (std::size_t i = 0; i < M; ++i) {
        unsigned __int128 carry = 0;
        for (std::size_t j = 0; j < N; ++j) {
            const unsigned __int128 t = static_cast<unsigned __int128>(a.limb[i]) * b.limb[j] +
                                        out.limb[i + j] + carry;
            out.limb[i + j] = static_cast<std::uint64_t>(t);
            carry = t >> 64;
        }
        out.limb[i + N] = static_cast<std::uint64_t>(carry);
    }
    return out;
}

template <std::size_t N>
constexpr UInt<N> mul_small(const UInt<N>& a, std::uint64_t b, std::uint64_t* carry_out = nullptr) {
    UInt<N> out;
    unsigned __int128 carry = 0;
    for (std::size_t i = 0; i < N; ++i) {
        const unsigned __int128 t = static_cast<unsigned __int128>(a.limb[i]) * b + carry;
        out.limb[i] = static_cast<std::uint64_t>(t);
        carry = t >> 64;
    }
    if (carry_out) *carry_out = static_cast<std::uint64_t>(carry);
    return out;
}

template <std::size_t N>
constexpr std::uint64_t mod_small(const UInt<N>& a, std::uint64_t d) {
    if (d == 0) throw std::domain_error("mod_small: division by zero");
    unsigned __int128 r = 0;
    for (std::size_t i = N; i-- > 0;) {
        r = ((r << 64) | a.limb[i]) % d;
    }
    return static_cast<std::uint64_t>(r);
}

template <std::size_t M, std::size_t N>
struct DivResult {
    UInt<M> quotient;
    UInt<N> remainder;
};

// Restoring binary long division. Slow and obviously correct; used for
// parameter derivation and the naive reference multiplier.
template <std::size_t M, std::size_t N>
constexpr DivResult<M, N> divmod(const UInt<M>& a, const UInt<N>& m) {
    if (m.is_zero()) throw std::domain_error("divmod: division by zero");
    if (m.bit(UInt<N>::kBits - 1)) throw std::domain_error("divmod: divisor must leave one spare top bit");
    DivResult<M, N> out;
    UInt<N>& r = out.remainder;
    for (std::size_t i = a.bit_length(); i-- > 0;) {
        r = r << 1;
        if (a.bit(i)) r.limb[0] |= 1;
        if (r >= m) {
            sub_in_place(r, m);
            out.quotient.set_bit(i);
        }
    }
    return out;
}

template <std::size_t M, std::size_t N>
constexpr UInt<N> mod(const UInt<M>& a, const UInt<N>& m) {
    return divmod(a, m).remainder;
}

template <std::size_t N>
std::optional<UInt<N>> parse_hex(std::string_view text) {
    if (text.starts_with("0x") || text.starts_with("0X")) text.remove_prefix(2);
    if (text.empty()) return std::nullopt;
    while (text.size() > 1 && text.front() == '0') text.remove_prefix(1);
    if (text.size() > 16 * N) return std::nullopt;
    UInt<N> out;
    std::size_t nibble = 0;
    for (std::size_t i = text.size(); i-- > 0; ++nibble) {
        const char c = text[i];
        std::uint64_t v;
        if (c >= '0' && c <= '9') {
            v = static_cast<std::uint64_t>(c - '0');
        } else if (c >= 'a' && c <= 'f') {
            v = static_cast<std::uint64_t>(c - 'a' + 10);
        } else if (c >= 'A' && c <= 'F') {
            v = static_cast<std::uint64_t>(c - 'A' + 10);
        } else {
            return std::nullopt;
        }
        out.limb[nibble / 16] |= v << (4 * (nibble % 16));
    }
    return out;
}

// Lowercase, zero-padded to the full width (16 digits per limb).
template <std::size_t N>
std::string to_hex(const UInt<N>& a) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out(16 * N, '0');
    for (std::size_t i = 0; i < 16 * N; ++i) {
        const std::size_t nibble = 16 * N - 1 - i;
        out[i] = kDigits[(a.limb[nibble / 16] >> (4 * (nibble % 16))) & 0xf];
    }
    return out;
}

template <std::size_t N>
std::string to_decimal(UInt<N> a) {
    if (a.is_zero()) return "0";
    std::string out;
    constexpr std::uint64_t kChunk = 10'000'000'000'000'000'000ull;
    while (!a.is_zero()) {
        unsigned __int128 r = 0;
        for (std::size_t i = N; i-- > 0;) {
            const unsigned __int128 cur = (r << 64) | a.limb[i];
            a.limb[i] = static_cast<std::uint64_t>(cur / kChunk);
            r = cur % kChunk;
        }
        auto rem = static_cast<std::uint64_t>(r);
        for (int d = 0; d < 19; ++d) {
            out.push_back(static_cast<char>('0' + rem % 10));
            rem /= 10;
        }
    }
    while (out.size() > 1 && out.back() == '0') out.pop_back();
    return {out.rbegin(), out.rend()};
}

template <std::size_t N>
std::optional<UInt<N>> parse_decimal(std::string_view text) {
    if (text.empty()) return std::nullopt;
    UInt<N> out;
    for (char c : text) {
        if (c < '0' || c > '9') return std::nullopt;
        std::uint64_t carry = 0;
        out = mul_small(out, 10, &carry);
        if (carry != 0) return std::nullopt;
        if (add_in_place(out, UInt<N>(static_cast<std::uint64_t>(c - '0')))) return std::nullopt;
    }
    return out;
}

// Big-endian bytes; inputs longer than the width must have zero high bytes.
template <std::size_t N>
std::optional<UInt<N>> from_be_bytes(std::span<const std::uint8_t> bytes) {
    UInt<N> out;
    const std::size_t n = bytes.size();
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t byte_index = n - 1 - i;  // position from the least-significant end
        const std::uint8_t b = bytes[i];
        if (byte_index >= 8 * N) {
            if (b != 0) return std::nullopt;
            continue;
        }
        out.limb[byte_index / 8] |= std::uint64_t{b} << (8 * (byte_index % 8));
    }
    return out;
}

template <std::size_t N>
std::array<std::uint8_t, 8 * N> to_be_bytes(const UInt<N>& a) {
    std::array<std::uint8_t, 8 * N> out{};
    for (std::size_t i = 0; i < 8 * N; ++i) {
        out[8 * N - 1 - i] = static_cast<std::uint8_t>(a.limb[i / 8] >> (8 * (i % 8)));
    }
    return out;
}

}  // namespace amaze::gf
