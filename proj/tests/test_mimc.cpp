#include <doctest.h>

#include <sstream>

#include "amaze/mimc/keccak.hpp"
#include "amaze/mimc/mimc.hpp"
#include "support.hpp"

using namespace amaze;
using namespace amaze::test;
using mimc::ConstantsError;

namespace {

std::string hex(const mimc::Digest256& d) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    for (auto b : d) {
        out += digits[b >> 4];
        out += digits[b & 15];
    }
    return out;
}

// Pinned with tests/oracle/mimc_reference.py.
constexpr const char* kC1 = "05f0a56ace26f8e9269f51e7abd5e1f38844bf0d3931a7666092332a29bf2585";
constexpr const char* kC90 = "165c102c9b54cbf67163ee0c4b1714ee3cb60cb26bc80364822c2a9e3a6f0d06";
constexpr const char* kEncrypt10 = "1156802a60436233334a0e7538cab0d7a77a28a7fb28e3430dd48d5dc4d2ffc7";
constexpr const char* kHash12 = "013320e90a0b63d228671945ca30678ce05e7209b464f7bee6c7e6458327cc2e";
constexpr const char* kHash11 = "145c71d48a56c729af36e837a6476ba755dc18886d020f381eb5e43bd7d7a83e";
constexpr const char* kHashEmpty = "24aff066a7c090275458bade74ac7e88e6acb0752e7b84796fbcf38410ee988c";
constexpr const char* kHashHello = "214623224c31974a7229883c8f5150586dbee5c50a421bf5fc2b0ce99424a646";
constexpr const char* kHash62a = "24787adbbc1720655955621f67aad7a083faa934eec8d96afe381700a438b3de";

std::string lines(std::size_t n, const std::string& value) {
    std::string s;
    for (std::size_t i = 0; i < n; ++i) s += value + "\n";
    return s;
}

ConstantsError::Kind load_error(const std::string& text) {
    std::istringstream in(text);
    try {
        (void)mimc::load_constants(in, FieldParams::bn254());
    } catch (const ConstantsError& e) {
        return e.kind();
    }
    FAIL("no error");
    return ConstantsError::Kind::io;
}

}  // namespace

TEST_CASE("keccak-256 vectors") {
    CHECK(hex(mimc::keccak256({})) == "c5d2460186f7233c927e7db2dcc703c0e500b653ca82273b7bfad8045d85a470");
    CHECK(hex(mimc::keccak256(mimc::as_bytes("abc"))) ==
          "4e03657aea45a94fc7d47ba826c8d667c0d1e6e33a64a036ec44f58fa12d6c45");
    // 136 bytes: exactly one rate block, padding spills into a second.
    const std::string block(136, 'a');
    const std::string longer(200, 'a');
    CHECK(hex(mimc::keccak256(mimc::as_bytes(block))) ==
          "a6c4d403279fe3e0af03729caada8374b5ca54d8065329a3ebcaeb4b60aa386e");
    CHECK(hex(mimc::keccak256(mimc::as_bytes(longer))) ==
          "96ea54061def936c4be90b518992fdc6f12f535068a256229aca54267b4d084d");
}

TEST_CASE("derived round constants") {
    const auto& f = FieldParams::bn254();
    const auto rc = mimc::derive_constants(mimc::kDefaultSeed, f);
    REQUIRE(rc.size() == 91);
    CHECK(rc[0].is_zero());
    CHECK(rc[1].to_hex() == kC1);
    CHECK(rc[90].to_hex() == kC90);
    CHECK_NOTHROW(mimc::validate(rc, f));

    const auto other = mimc::derive_constants("another seed", f);
    CHECK(other[0].is_zero());
    CHECK(other[1] != rc[1]);

    const auto zeros = mimc::zero_constants(f);
    CHECK_NOTHROW(mimc::validate(zeros, f));
    mimc::RoundConstants shortened = rc;
    shortened.constants.pop_back();
    CHECK_THROWS_AS(mimc::validate(shortened, f), std::invalid_argument);
}

TEST_CASE("constants file loader") {
    const auto& f = FieldParams::bn254();
    const std::string zero(64, '0');
    {
        std::istringstream in("# header\n" + lines(91, zero) + "\n");
        const auto rc = mimc::load_constants(in, f);
        CHECK(rc.size() == 91);
        CHECK(rc.constants == mimc::zero_constants(f).constants);
    }
    {
        const auto rc = mimc::derive_constants(mimc::kDefaultSeed, f);
        std::stringstream buf;
        mimc::write_constants(buf, rc);
        CHECK(mimc::load_constants(buf, f).constants == rc.constants);
    }
    CHECK(load_error(lines(90, zero)) == ConstantsError::Kind::count);
    CHECK(load_error(lines(92, zero)) == ConstantsError::Kind::count);
    CHECK(load_error(lines(90, zero) + "0xnothex\n") == ConstantsError::Kind::malformed);
    CHECK(load_error("1\n" + lines(90, zero)) == ConstantsError::Kind::nonzero_first);
    const std::string p_hex = gf::to_hex(f.modulus());
    CHECK(load_error(lines(10, zero) + p_hex + "\n" + lines(80, zero)) == ConstantsError::Kind::not_canonical);

    std::istringstream in(lines(90, zero));
    try {
        (void)mimc::load_constants(in, f);
        FAIL("no error");
    } catch (const ConstantsError& e) {
        CHECK(std::string(e.what()).find("expected 91 constants") != std::string::npos);
    }
    std::istringstream bad(lines(3, zero) + p_hex + "\n");
    try {
        (void)mimc::load_constants(bad, f);
        FAIL("no error");
    } catch (const ConstantsError& e) {
        CHECK(e.line() == 4);
        CHECK(std::string(e.what()).find("not canonical") != std::string::npos);
    }
    CHECK_THROWS_AS(mimc::load_constants(std::filesystem::path("/nonexistent/constants.txt"), f), ConstantsError);
}

TEST_CASE("cipher vectors") {
    const auto& f = FieldParams::bn254();
    const auto rc = mimc::derive_constants(mimc::kDefaultSeed, f);
    const auto zeros = mimc::zero_constants(f);
    CHECK(mimc::encrypt(f.zero(), f.zero(), zeros, f).is_zero());
    CHECK(mimc::encrypt(f.one(), f.zero(), zeros, f) == f.one());
    CHECK(mimc::encrypt(f.one(), f.zero(), rc, f).to_hex() == kEncrypt10);

    mimc::RoundConstants shortened = rc;
    shortened.constants.pop_back();
    CHECK_THROWS_AS(mimc::encrypt(f.one(), f.zero(), shortened, f), std::invalid_argument);
}

TEST_CASE("cipher is backend and chain independent") {
    const auto& f = FieldParams::bn254();
    const auto rc = mimc::derive_constants(mimc::kDefaultSeed, f);
    Rng rng(8);
    for (int i = 0; i < 20; ++i) {
        const auto x = rng.element(f);
        const auto k = rng.element(f);
        const auto ref = mimc::encrypt(x, k, rc, f, gf::MulBackend::naive);
        CHECK(mimc::encrypt(x, k, rc, f, gf::MulBackend::peasant) == ref);
        CHECK(mimc::encrypt(x, k, rc, f, gf::MulBackend::barrett) == ref);
        CHECK(mimc::encrypt(x, k, rc, f, gf::MulBackend::barrett, {.chain = mimc::Pow7Chain::three_mul}) == ref);

        // a cpp_int rendition of the round loop
        cpp_int s = big(x);
        for (std::size_t j = 0; j < rc.size(); ++j) {
            s = boost::multiprecision::powm(cpp_int((s + big(k) + big(rc[j])) % bn254_p()), cpp_int(7), bn254_p());
        }
        CHECK(big(ref) == (s + big(k)) % bn254_p());

        const auto no_final = mimc::encrypt(x, k, rc, f, gf::MulBackend::barrett, {.final_key_addition = false});
        CHECK(gf::add_mod(no_final, k, f) == ref);
    }
}

TEST_CASE("key sensitivity") {
    const auto& f = FieldParams::bn254();
    const auto rc = mimc::derive_constants(mimc::kDefaultSeed, f);
    Rng rng(9);
    for (int i = 0; i < 10; ++i) {
        const auto x = rng.element(f);
        const auto k = rng.element(f);
        const auto k2 = gf::add_mod(k, f.one(), f);
        CHECK(mimc::encrypt(x, k, rc, f) != mimc::encrypt(x, k2, rc, f));
    }
}

TEST_CASE("cipher over a small field is a permutation") {
    // gcd(5, 1008) = 1, so x -> x^5 permutes GF(1009) and so does every key's cipher.
    const auto f = FieldParams::make(U256(1009), 5);
    REQUIRE(f.rounds() == 5);
    const std::array<std::uint8_t, 4> seed{1, 2, 3, 4};
    const auto rc = mimc::derive_constants(seed, f);
    for (std::uint64_t k : {0ull, 1ull, 500ull, 1008ull}) {
        std::vector<bool> seen(1009);
        for (std::uint64_t x = 0; x < 1009; ++x) {
            const auto y = mimc::encrypt(f.element(x), f.element(k), rc, f);
            CHECK(y == mimc::encrypt(f.element(x), f.element(k), rc, f, gf::MulBackend::peasant));
            // straight modular arithmetic
            std::uint64_t s = x;
            for (const auto& c : rc.constants) {
                std::uint64_t t = (s + k + c.value().limb[0]) % 1009, acc = 1;
                for (int e = 0; e < 5; ++e) acc = acc * t % 1009;
                s = acc;
            }
            CHECK(y.value().limb[0] == (s + k) % 1009);
            seen[y.value().limb[0]] = true;
        }
        CHECK(std::count(seen.begin(), seen.end(), true) == 1009);
    }
}

TEST_CASE("hash over blocks") {
    const auto& f = FieldParams::bn254();
    const auto rc = mimc::derive_constants(mimc::kDefaultSeed, f);
    const auto zeros = mimc::zero_constants(f);
    Rng rng(10);
    const auto x = rng.element(f);
    const std::array<FieldElement, 1> one_block{x};
    CHECK(mimc::hash_blocks(one_block, zeros, f) ==
          gf::add_mod(mimc::encrypt(x, f.zero(), zeros, f), x, f));

    const std::array<FieldElement, 2> b12{f.element(1), f.element(2)};
    const std::array<FieldElement, 2> b11{f.element(1), f.element(1)};
    const std::array<FieldElement, 1> b1{f.element(1)};
    CHECK(mimc::hash_blocks(b12, rc, f).to_hex() == kHash12);
    CHECK(mimc::hash_blocks(b11, rc, f).to_hex() == kHash11);
    CHECK(mimc::hash_blocks(b11, rc, f) != mimc::hash_blocks(b1, rc, f));
    CHECK_THROWS_AS(mimc::hash_blocks({}, rc, f), std::invalid_argument);

    mimc::HashState st(rc, f, gf::MulBackend::peasant);
    st.absorb(f.element(1));
    st.absorb(f.element(2));
    CHECK(st.blocks_absorbed() == 2);
    CHECK(st.chaining().to_hex() == kHash12);
}

TEST_CASE("padding") {
    const auto& f = FieldParams::bn254();
    const auto empty = mimc::pad_message({}, f);
    REQUIRE(empty.size() == 2);
    CHECK(empty[0].to_hex() == "00" "01" + std::string(60, '0'));
    CHECK(empty[1].is_zero());

    const auto full = mimc::pad_message(mimc::as_bytes(std::string(31, 'x')), f);
    REQUIRE(full.size() == 3);
    CHECK(full[1].to_hex() == "00" "01" + std::string(60, '0'));
    CHECK(full[2] == f.element(248));

    const auto hello = mimc::pad_message(mimc::as_bytes("hello"), f);
    REQUIRE(hello.size() == 2);
    CHECK(hello[0].to_hex() == "0068656c6c6f0100000000000000000000000000000000000000000000000000");
    CHECK(hello[1].to_hex() == "0000000000000000000000000000000000000000000000000000000000000028");

    CHECK(mimc::pad_message(mimc::as_bytes(std::string(62, 'a')), f).size() == 4);
    CHECK_THROWS_AS(mimc::pad_message({}, FieldParams::make(U256(1009), 5)), std::invalid_argument);
}

TEST_CASE("padding is injective on short messages") {
    // Distinct messages must give distinct block lists; in particular no
    // padded message is a prefix of another's.
    const auto& f = FieldParams::bn254();
    std::vector<std::vector<std::uint8_t>> msgs{{}, {0}, {0, 0}, {1}, {1, 0}};
    for (std::size_t n : {30u, 31u, 32u, 62u}) {
        msgs.emplace_back(n, 0);
        msgs.emplace_back(n, 1);
    }
    std::vector<std::vector<FieldElement>> padded;
    for (const auto& m : msgs) padded.push_back(mimc::pad_message(m, f));
    for (std::size_t i = 0; i < padded.size(); ++i) {
        for (std::size_t j = 0; j < padded.size(); ++j) {
            if (i == j) continue;
            const auto& a = padded[i];
            const auto& b = padded[j];
            const bool prefix = a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
            CHECK_FALSE(prefix);
        }
    }
}

TEST_CASE("hash_bytes vectors") {
    const auto& f = FieldParams::bn254();
    const auto rc = mimc::derive_constants(mimc::kDefaultSeed, f);
    CHECK(mimc::hash_bytes({}, rc, f).to_hex() == kHashEmpty);
    CHECK(mimc::hash_bytes(mimc::as_bytes("hello"), rc, f).to_hex() == kHashHello);
    CHECK(mimc::hash_bytes(mimc::as_bytes("hello"), rc, f) == mimc::hash_bytes(mimc::as_bytes("hello"), rc, f));
    CHECK(mimc::hash_bytes(mimc::as_bytes(std::string(62, 'a')), rc, f).to_hex() == kHash62a);
    const std::string m = "hello";
    const std::string m0 = std::string("hello") + '\0';
    CHECK(mimc::hash_bytes(mimc::as_bytes(m), rc, f) != mimc::hash_bytes(mimc::as_bytes(m0), rc, f));
}
