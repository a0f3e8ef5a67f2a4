#pragma once

// Wide multiplication in the shape of the DSP datapath: the second operand is
// cut into W-bit chunks, the first into two halves at bit 127. Each half is
// multiplied by every chunk (partial multiplication), the shifted partials of
// a half are summed by a balanced binary tree, and the two half-sums are
// combined as sum0 + 2^127 * sum1.
//
// The pieces are exposed separately so the pipeline model can place each one
// in its own clock stage.

#include <cstdint>
#include <vector>

#include "amaze/gf/uint.hpp"

namespace amaze::gf {

inline constexpr unsigned kDefaultChunkBits = 27;
inline constexpr unsigned kHalfSplitBit = 127;
/// Operands may be one bit wider than the field so Barrett intermediates fit.
inline constexpr unsigned kMaxOperandBits = 255;

constexpr unsigned chunk_count(unsigned chunk_bits) {
    return (kMaxOperandBits + chunk_bits - 1) / chunk_bits;
}

struct ChunkDecomposition {
    unsigned width = kDefaultChunkBits;
    std::vector<std::uint32_t> chunks;  // least-significant first
    U256 low_half;                      // bits [126:0]
    U256 high_half;                     // bits [254:127]

    [[nodiscard]] U256 reconstruct_from_chunks() const;
    [[nodiscard]] U256 reconstruct_from_halves() const;
};

/// Splits v into ceil(255/W) chunks and two halves. Throws std::invalid_argument
/// if v >= 2^255 or W is outside [2, 32].
ChunkDecomposition decompose(const U256& v, unsigned chunk_bits = kDefaultChunkBits);

struct PartialProduct {
    unsigned half = 0;   // 0 = low half of x, 1 = high half
    unsigned chunk = 0;  // index i of y_i
    U512 value;          // x_half * y_i * 2^(W*i)
};

/// All shifted partial products of one half against every chunk, chunk order.
/// Goes through the dispatched SIMD kernel.
std::vector<PartialProduct> partial_products(const U256& half, unsigned which_half,
                                             const ChunkDecomposition& y);

/// Balanced pairwise reduction. levels[0] holds the inputs; each following
/// level sums adjacent pairs, lowest indices first, and carries an odd last
/// element up unchanged. The last level has one element.
struct AdditionTree {
    std::vector<std::vector<U512>> levels;

    [[nodiscard]] const U512& sum() const { return levels.back().front(); }
    [[nodiscard]] std::size_t depth() const { return levels.size() - 1; }
    /// Number of two-input adders used.
    [[nodiscard]] std::size_t adder_count() const;
};

AdditionTree addition_tree(const std::vector<PartialProduct>& partials);

/// sum0 + 2^127 * sum1.
U512 combine_halves(const U512& low_sum, const U512& high_sum);

/// Every intermediate of one chunked multiplication, in dataflow order.
struct MultiplierDataflow {
    ChunkDecomposition y;
    U256 x_low;
    U256 x_high;
    std::vector<PartialProduct> low_partials;
    std::vector<PartialProduct> high_partials;
    AdditionTree low_tree;
    AdditionTree high_tree;
    U512 product;
};

MultiplierDataflow trace_wide_chunked(const U256& a, const U256& b,
                                      unsigned chunk_bits = kDefaultChunkBits);

/// Exact a * b computed only through the chunked dataflow above.
/// Throws std::invalid_argument if either operand is >= 2^255.
U512 mul_wide_chunked(const U256& a, const U256& b, unsigned chunk_bits = kDefaultChunkBits);

}  // namespace amaze::gf
