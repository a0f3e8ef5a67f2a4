#pragma once

// MiMC-p/p block cipher and the Miyaguchi-Preneel hash built on it.
//
// Round i maps s to (s + k + c_i)^d; after r rounds the key is added once
// more. For d = 7 the exponentiation uses the four- or three-multiplication
// chain; other exponents (small test fields) use square-and-multiply.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "amaze/gf/field.hpp"
#include "amaze/gf/modmul.hpp"

namespace amaze::mimc {

using gf::FieldElement;
using gf::FieldParams;

inline constexpr std::string_view kDefaultSeed = "AMAZE_MiMC_BN254";

struct RoundConstants {
    std::vector<FieldElement> constants;
    std::string seed_id;

    [[nodiscard]] std::size_t size() const { return constants.size(); }
    [[nodiscard]] const FieldElement& operator[](std::size_t i) const { return constants[i]; }
};

/// Throws std::invalid_argument unless constants has r entries with c_0 = 0.
void validate(const RoundConstants& rc, const FieldParams& params);

/// c_0 = 0; c_i = Keccak-256 applied i times to the seed, big-endian, mod p.
RoundConstants derive_constants(std::span<const std::uint8_t> seed, const FieldParams& params);
RoundConstants derive_constants(std::string_view seed, const FieldParams& params);

/// All-zero constants; every round is then a plain power map.
RoundConstants zero_constants(const FieldParams& params);

class ConstantsError : public std::runtime_error {
public:
    enum class Kind { io, count, malformed, not_canonical, nonzero_first };

    ConstantsError(Kind kind, std::size_t line, const std::string& message)
        : std::runtime_error(message), kind_(kind), line_(line) {}

    [[nodiscard]] Kind kind() const { return kind_; }
    /// 1-based line of the offending entry; 0 for whole-file problems.
    [[nodiscard]] std::size_t line() const { return line_; }

private:
    Kind kind_;
    std::size_t line_;
};

/// One hex field element per line, '#' comments and blank lines ignored.
/// Requires exactly r entries, all canonical, the first one zero.
RoundConstants load_constants(std::istream& in, const FieldParams& params, std::string seed_id = "stream");
RoundConstants load_constants(const std::filesystem::path& path, const FieldParams& params);

/// Inverse of load_constants.
void write_constants(std::ostream& out, const RoundConstants& rc);

enum class Pow7Chain { four_mul, three_mul };

struct CipherOptions {
    bool final_key_addition = true;
    Pow7Chain chain = Pow7Chain::four_mul;
};

/// The round exponentiation the cipher uses for params.exponent().
template <gf::ModMultiplier M>
FieldElement round_power(const FieldElement& x, const M& mul, const FieldParams& params, Pow7Chain chain) {
    if (params.exponent() == 7) {
        return chain == Pow7Chain::three_mul ? gf::pow7_chain3(x, mul) : gf::pow7_chain4(x, mul);
    }
    return gf::pow_small(x, params.exponent(), mul, params.one());
}

template <gf::ModMultiplier M>
FieldElement encrypt(const FieldElement& x, const FieldElement& k, const RoundConstants& rc,
                     const FieldParams& params, const M& mul, const CipherOptions& options = {}) {
    if (rc.size() != params.rounds()) throw std::invalid_argument("encrypt: round constant count must equal r");
    FieldElement s = x;
    for (const FieldElement& c : rc.constants) {
        s = round_power(gf::add_mod(gf::add_mod(s, k, params), c, params), mul, params, options.chain);
    }
    return options.final_key_addition ? gf::add_mod(s, k, params) : s;
}

FieldElement encrypt(const FieldElement& x, const FieldElement& k, const RoundConstants& rc,
                     const FieldParams& params, gf::MulBackend backend = gf::MulBackend::barrett,
                     const CipherOptions& options = {});

/// Miyaguchi-Preneel chaining state: y_i = E_{y_{i-1}}(x_i) + y_{i-1} + x_i.
class HashState {
public:
    HashState(const RoundConstants& rc, const FieldParams& params, gf::MulBackend backend,
              const CipherOptions& options = {});

    void absorb(const FieldElement& block);

    [[nodiscard]] const FieldElement& chaining() const { return chaining_; }
    [[nodiscard]] std::uint64_t blocks_absorbed() const { return blocks_; }

private:
    const RoundConstants* rc_;
    const FieldParams* params_;
    gf::MulBackend backend_;
    CipherOptions options_;
    FieldElement chaining_;  // IV = 0
    std::uint64_t blocks_ = 0;
};

/// One compression step, exposed for batched schedulers.
FieldElement compress(const FieldElement& chaining, const FieldElement& block, const FieldElement& cipher_out,
                      const FieldParams& params);

/// Throws std::invalid_argument on an empty block list.
FieldElement hash_blocks(std::span<const FieldElement> blocks, const RoundConstants& rc, const FieldParams& params,
                         gf::MulBackend backend = gf::MulBackend::barrett, const CipherOptions& options = {});

inline constexpr std::size_t kBlockBytes = 31;

/// 31-byte big-endian chunks, a 0x01 delimiter zero-filled to a chunk
/// boundary, then one block holding the message length in bits.
std::vector<FieldElement> pad_message(std::span<const std::uint8_t> message, const FieldParams& params);

FieldElement hash_bytes(std::span<const std::uint8_t> message, const RoundConstants& rc, const FieldParams& params,
                        gf::MulBackend backend = gf::MulBackend::barrett, const CipherOptions& options = {});

inline std::span<const std::uint8_t> as_bytes(std::string_view s) {
    return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

}  // namespace amaze::mimc
