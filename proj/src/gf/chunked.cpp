#include "amaze/gf/chunked.hpp"

#include <array>
#include <span>
#include <stdexcept>
#include <string>

#include "amaze/simd/partial_products.hpp"

namespace amaze::gf {

namespace {

void check_operand(const U256& v) {
    if (v.bit_length() > kMaxOperandBits) {
        throw std::invalid_argument("chunked multiplier: operand must be below 2^255");
    }
}

void check_width(unsigned chunk_bits) {
    if (chunk_bits < 2 || chunk_bits > 32) {
        throw std::invalid_argument("chunked multiplier: chunk width " + std::to_string(chunk_bits) +
                                    " outside [2, 32]");
    }
}

}  // namespace

U256 ChunkDecomposition::reconstruct_from_chunks() const {
    U256 v;
    for (std::size_t i = chunks.size(); i-- > 0;) {
        v = v << width;
        add_in_place(v, U256(chunks[i]));
    }
    return v;
}

U256 ChunkDecomposition::reconstruct_from_halves() const {
    return low_half + (high_half << kHalfSplitBit);
}

ChunkDecomposition decompose(const U256& v, unsigned chunk_bits) {
    check_operand(v);
    check_width(chunk_bits);
    ChunkDecomposition d;
    d.width = chunk_bits;
    const unsigned count = chunk_count(chunk_bits);
    d.chunks.reserve(count);
    for (unsigned i = 0; i < count; ++i) {
        d.chunks.push_back(static_cast<std::uint32_t>(v.bits(std::size_t{i} * chunk_bits, chunk_bits)));
    }
    d.low_half = low_bits(v, kHalfSplitBit);
    d.high_half = v >> kHalfSplitBit;
    return d;
}

std::vector<PartialProduct> partial_products(const U256& half, unsigned which_half,
                                             const ChunkDecomposition& y) {
    if (half.bit_length() > 128) throw std::invalid_argument("partial_products: half exceeds 128 bits");
    const std::array<std::uint32_t, 4> limbs{
        static_cast<std::uint32_t>(half.limb[0]), static_cast<std::uint32_t>(half.limb[0] >> 32),
        static_cast<std::uint32_t>(half.limb[1]), static_cast<std::uint32_t>(half.limb[1] >> 32)};

    std::vector<std::uint64_t> columns(4 * y.chunks.size());
    simd::partial_products(limbs, y.chunks, columns);

    std::vector<PartialProduct> out;
    out.reserve(y.chunks.size());
    for (unsigned i = 0; i < y.chunks.size(); ++i) {
        // Normalize the four 64-bit columns at offsets 0, 32, 64, 96.
        U512 value;
        for (unsigned j = 0; j < 4; ++j) {
            add_in_place(value, U512(columns[4 * i + j]) << (32 * j));
        }
        out.push_back({which_half, i, value << (std::size_t{i} * y.width)});
    }
    return out;
}

std::size_t AdditionTree::adder_count() const {
    std::size_t n = 0;
    for (std::size_t l = 0; l + 1 < levels.size(); ++l) n += levels[l].size() / 2;
    return n;
}

AdditionTree addition_tree(const std::vector<PartialProduct>& partials) {
    if (partials.empty()) throw std::invalid_argument("addition_tree: no inputs");
    AdditionTree tree;
    std::vector<U512> level;
    level.reserve(partials.size());
    for (const auto& p : partials) level.push_back(p.value);
    tree.levels.push_back(std::move(level));
    while (tree.levels.back().size() > 1) {
        const auto& cur = tree.levels.back();
        std::vector<U512> next;
        next.reserve((cur.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < cur.size(); i += 2) next.push_back(cur[i] + cur[i + 1]);
        if (cur.size() % 2 == 1) next.push_back(cur.back());
        tree.levels.push_back(std::move(next));
    }
    return tree;
}

U512 combine_halves(const U512& low_sum, const U512& high_sum) {
    return low_sum + (high_sum << kHalfSplitBit);
}

MultiplierDataflow trace_wide_chunked(const U256& a, const U256& b, unsigned chunk_bits) {
    check_operand(a);
    MultiplierDataflow df;
    df.y = decompose(b, chunk_bits);
    df.x_low = low_bits(a, kHalfSplitBit);
    df.x_high = a >> kHalfSplitBit;
    df.low_partials = partial_products(df.x_low, 0, df.y);
    df.high_partials = partial_products(df.x_high, 1, df.y);
    df.low_tree = addition_tree(df.low_partials);
    df.high_tree = addition_tree(df.high_partials);
    df.product = combine_halves(df.low_tree.sum(), df.high_tree.sum());
    return df;
}

namespace {

// Adds v * 2^bit into acc.
void add_at(U512& acc, std::uint64_t v, std::size_t bit) {
    std::size_t limb = bit / 64;
    const unsigned shift = bit % 64;
    const std::uint64_t lo = v << shift;
    std::uint64_t hi = shift ? v >> (64 - shift) : 0;
    unsigned __int128 carry = static_cast<unsigned __int128>(acc.limb[limb]) + lo;
    acc.limb[limb] = static_cast<std::uint64_t>(carry);
    carry >>= 64;
    for (++limb; limb < 8 && (carry || hi); ++limb) {
        carry += static_cast<unsigned __int128>(acc.limb[limb]) + hi;
        hi = 0;
        acc.limb[limb] = static_cast<std::uint64_t>(carry);
        carry >>= 64;
    }
}

constexpr std::size_t kMaxChunks = chunk_count(2);

// Same dataflow as trace_wide_chunked on fixed buffers: kernel columns,
// shifted partials, then the pairwise tree reduced in place.
U512 half_sum(const U256& half, std::span<const std::uint32_t> chunks, unsigned width) {
    const std::array<std::uint32_t, 4> limbs{
        static_cast<std::uint32_t>(half.limb[0]), static_cast<std::uint32_t>(half.limb[0] >> 32),
        static_cast<std::uint32_t>(half.limb[1]), static_cast<std::uint32_t>(half.limb[1] >> 32)};
    std::array<std::uint64_t, 4 * kMaxChunks> columns;
    const std::size_t n = chunks.size();
    simd::partial_products(limbs, chunks, std::span(columns).first(4 * n));

    std::array<U512, kMaxChunks> level{};
    for (std::size_t i = 0; i < n; ++i) {
        for (unsigned j = 0; j < 4; ++j) add_at(level[i], columns[4 * i + j], i * width + 32 * j);
    }
    for (std::size_t len = n; len > 1;) {
        std::size_t out = 0;
        for (std::size_t i = 0; i + 1 < len; i += 2) level[out++] = level[i] + level[i + 1];
        if (len % 2 == 1) level[out++] = level[len - 1];
        len = out;
    }
    return level[0];
}

}  // namespace

U512 mul_wide_chunked(const U256& a, const U256& b, unsigned chunk_bits) {
    check_operand(a);
    check_operand(b);
    check_width(chunk_bits);
    const unsigned count = chunk_count(chunk_bits);
    std::array<std::uint32_t, kMaxChunks> chunks;
    for (unsigned i = 0; i < count; ++i) {
        chunks[i] = static_cast<std::uint32_t>(b.bits(std::size_t{i} * chunk_bits, chunk_bits));
    }
    const std::span<const std::uint32_t> y(chunks.data(), count);
    return combine_halves(half_sum(low_bits(a, kHalfSplitBit), y, chunk_bits),
                          half_sum(a >> kHalfSplitBit, y, chunk_bits));
}

}  // namespace amaze::gf
