#include "amaze/mimc/mimc.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "amaze/mimc/keccak.hpp"

namespace amaze::mimc {

using gf::U256;

void validate(const RoundConstants& rc, const FieldParams& params) {
    if (rc.size() != params.rounds()) {
        throw std::invalid_argument("round constants: expected " + std::to_string(params.rounds()) + ", got " +
                                    std::to_string(rc.size()));
    }
    if (!rc.constants.front().is_zero()) throw std::invalid_argument("round constants: c_0 must be zero");
}

RoundConstants derive_constants(std::span<const std::uint8_t> seed, const FieldParams& params) {
    RoundConstants rc;
    rc.seed_id = "keccak256-chain:" + std::string(reinterpret_cast<const char*>(seed.data()), seed.size());
    rc.constants.reserve(params.rounds());
    rc.constants.push_back(params.zero());
    if (params.rounds() < 2) return rc;
    Digest256 h = keccak256(seed);
    for (unsigned i = 1; i < params.rounds(); ++i) {
        if (i > 1) h = keccak256(h);
        rc.constants.push_back(params.reduce(*gf::from_be_bytes<4>(h)));
    }
    return rc;
}

RoundConstants derive_constants(std::string_view seed, const FieldParams& params) {
    return derive_constants(as_bytes(seed), params);
}

RoundConstants zero_constants(const FieldParams& params) {
    return {std::vector<FieldElement>(params.rounds(), params.zero()), "zero"};
}

RoundConstants load_constants(std::istream& in, const FieldParams& params, std::string seed_id) {
    using Kind = ConstantsError::Kind;
    const std::size_t expected = params.rounds();
    RoundConstants rc;
    rc.seed_id = std::move(seed_id);

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto last = line.find_last_not_of(" \t\r");
        const std::string_view text = std::string_view(line).substr(first, last - first + 1);
        const std::string where = "line " + std::to_string(line_no) + ": ";

        if (rc.size() == expected) {
            throw ConstantsError(Kind::count, line_no,
                                 where + "expected " + std::to_string(expected) + " constants, found more");
        }
        const auto v = gf::parse_hex<4>(text);
        if (!v) throw ConstantsError(Kind::malformed, line_no, where + "malformed hex '" + std::string(text) + "'");
        if (!params.is_canonical(*v)) {
            throw ConstantsError(Kind::not_canonical, line_no, where + "value is not canonical (>= p)");
        }
        if (rc.constants.empty() && !v->is_zero()) {
            throw ConstantsError(Kind::nonzero_first, line_no, where + "first constant must be zero");
        }
        rc.constants.push_back(params.element(*v));
    }
    if (in.bad()) throw ConstantsError(Kind::io, 0, "read error in constants file");
    if (rc.size() != expected) {
        throw ConstantsError(Kind::count, 0,
                             "expected " + std::to_string(expected) + " constants, found " + std::to_string(rc.size()));
    }
    return rc;
}

RoundConstants load_constants(const std::filesystem::path& path, const FieldParams& params) {
    std::ifstream in(path);
    if (!in) throw ConstantsError(ConstantsError::Kind::io, 0, "cannot open constants file " + path.string());
    return load_constants(in, params, "file:" + path.string());
}

void write_constants(std::ostream& out, const RoundConstants& rc) {
    for (const auto& c : rc.constants) out << c.to_hex() << '\n';
}

FieldElement encrypt(const FieldElement& x, const FieldElement& k, const RoundConstants& rc,
                     const FieldParams& params, gf::MulBackend backend, const CipherOptions& options) {
    return encrypt(x, k, rc, params, gf::Multiplier(params, backend), options);
}

HashState::HashState(const RoundConstants& rc, const FieldParams& params, gf::MulBackend backend,
                     const CipherOptions& options)
    : rc_(&rc), params_(&params), backend_(backend), options_(options), chaining_(params.zero()) {}

FieldElement compress(const FieldElement& chaining, const FieldElement& block, const FieldElement& cipher_out,
                      const FieldParams& params) {
    return gf::add_mod(gf::add_mod(cipher_out, chaining, params), block, params);
}

void HashState::absorb(const FieldElement& block) {
    // The chaining value is the cipher key, the block its plaintext.
    const FieldElement e = encrypt(block, chaining_, *rc_, *params_, backend_, options_);
    chaining_ = compress(chaining_, block, e, *params_);
    ++blocks_;
}

FieldElement hash_blocks(std::span<const FieldElement> blocks, const RoundConstants& rc, const FieldParams& params,
                         gf::MulBackend backend, const CipherOptions& options) {
    if (blocks.empty()) throw std::invalid_argument("hash_blocks: empty block list");
    HashState state(rc, params, backend, options);
    for (const auto& b : blocks) state.absorb(b);
    return state.chaining();
}

std::vector<FieldElement> pad_message(std::span<const std::uint8_t> message, const FieldParams& params) {
    if (params.modulus().bit_length() <= 8 * kBlockBytes) {
        throw std::invalid_argument("pad_message: field too small to embed 31-byte blocks");
    }
    std::vector<FieldElement> blocks;
    blocks.reserve(message.size() / kBlockBytes + 2);

    std::size_t offset = 0;
    for (; offset + kBlockBytes <= message.size(); offset += kBlockBytes) {
        blocks.push_back(params.element(*gf::from_be_bytes<4>(message.subspan(offset, kBlockBytes))));
    }
    std::array<std::uint8_t, kBlockBytes> last{};
    const std::size_t tail = message.size() - offset;
    for (std::size_t i = 0; i < tail; ++i) last[i] = message[offset + i];
    last[tail] = 0x01;
    blocks.push_back(params.element(*gf::from_be_bytes<4>(last)));

    const unsigned __int128 bit_length = static_cast<unsigned __int128>(message.size()) * 8;
    U256 length;
    length.limb[0] = static_cast<std::uint64_t>(bit_length);
    length.limb[1] = static_cast<std::uint64_t>(bit_length >> 64);
    blocks.push_back(params.element(length));
    return blocks;
}

FieldElement hash_bytes(std::span<const std::uint8_t> message, const RoundConstants& rc, const FieldParams& params,
                        gf::MulBackend backend, const CipherOptions& options) {
    const auto blocks = pad_message(message, params);
    return hash_blocks(blocks, rc, params, backend, options);
}

}  // namespace amaze::mimc
